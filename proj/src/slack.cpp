#include "slack.hpp"

#include <stdexcept>
#include <string>

namespace birow {

namespace {
constexpr long kMaxPaths = 1000000;

nlohmann::json mismatch(const std::string& identity, const PartialValue& lhs,
                        const PartialValue& rhs) {
    nlohmann::json w;
    w["identity"] = identity;
    w["lhs"] = to_string(lhs);
    w["rhs"] = to_string(rhs);
    return w;
}
}  // namespace

SlackTable::SlackTable(const Poset& P, const Orbit& orbit)
    : P_(&P), ext_(P), orbit_(&orbit) {}

const RingElement& SlackTable::label(int v, long l) const {
    if (!orbit_->defined(l)) throw std::invalid_argument("slack table: iterate not defined");
    return orbit_->at(l).at(v);
}

PartialValue SlackTable::down_slack_uncached(int v, long l) const {
    if (ext_.is_sentinel(v)) return ring_one(orbit_->at(0).ring);
    const Labeling& f = orbit_->at(l);
    RingElement lower = ring_zero(f.ring);
    for (int u : ext_.down_covers(v)) lower = add(lower, f.at(u));
    return pmul(PartialValue(f.at(v)), try_invert(lower));
}

PartialValue SlackTable::up_slack_uncached(int v, long l) const {
    if (ext_.is_sentinel(v)) return ring_one(orbit_->at(0).ring);
    const Labeling& f = orbit_->at(l);
    PartialValue upper;
    bool first = true;
    for (int u : ext_.up_covers(v)) {
        upper = first ? pinv(PartialValue(f.at(u))) : padd(upper, pinv(PartialValue(f.at(u))));
        first = false;
    }
    return pmul(pinv(upper), pinv(PartialValue(f.at(v))));
}

PartialValue SlackTable::down_slack(int v, long l) {
    auto key = std::make_pair(v, l);
    if (auto it = down_memo_.find(key); it != down_memo_.end()) return it->second;
    PartialValue out = down_slack_uncached(v, l);
    down_memo_.emplace(key, out);
    return out;
}

PartialValue SlackTable::up_slack(int v, long l) {
    auto key = std::make_pair(v, l);
    if (auto it = up_memo_.find(key); it != up_memo_.end()) return it->second;
    PartialValue out = up_slack_uncached(v, l);
    up_memo_.emplace(key, out);
    return out;
}

PartialValue SlackTable::down_path_sum(int s, int t, long l) {
    auto key = std::make_tuple(s, t, l);
    if (auto it = down_sum_memo_.find(key); it != down_sum_memo_.end()) return it->second;
    PartialValue out;
    if (s == t) {
        out = down_slack(s, l);
    } else if (!ext_.leq(t, s)) {
        out = ring_zero(orbit_->at(0).ring);
    } else {
        // First-step recursion, restricted to covers that can still reach t;
        // the skipped branches contribute the empty path sum (zero).
        PartialValue inner(ring_zero(orbit_->at(0).ring));
        for (int u : ext_.down_covers(s)) {
            if (!ext_.leq(t, u)) continue;
            inner = padd(inner, down_path_sum(u, t, l));
        }
        out = pmul(down_slack(s, l), inner);
    }
    down_sum_memo_.emplace(key, out);
    return out;
}

PartialValue SlackTable::up_path_sum(int s, int t, long l) {
    auto key = std::make_tuple(s, t, l);
    if (auto it = up_sum_memo_.find(key); it != up_sum_memo_.end()) return it->second;
    PartialValue out;
    if (s == t) {
        out = up_slack(s, l);
    } else if (!ext_.leq(t, s)) {
        out = ring_zero(orbit_->at(0).ring);
    } else {
        PartialValue inner(ring_zero(orbit_->at(0).ring));
        for (int u : ext_.down_covers(s)) {
            if (!ext_.leq(t, u)) continue;
            inner = padd(inner, up_path_sum(u, t, l));
        }
        out = pmul(up_slack(s, l), inner);
    }
    up_sum_memo_.emplace(key, out);
    return out;
}

std::vector<std::vector<int>> SlackTable::enumerate_paths(int s, int t) const {
    std::vector<std::vector<int>> out;
    if (!ext_.leq(t, s)) return out;
    std::vector<int> current{s};
    auto dfs = [&](auto&& self, int at) -> void {
        if (at == t) {
            if (static_cast<long>(out.size()) >= kMaxPaths)
                throw std::runtime_error("path enumeration exceeds 1000000 paths");
            out.push_back(current);
            return;
        }
        for (int u : ext_.down_covers(at)) {
            if (!ext_.leq(t, u)) continue;
            current.push_back(u);
            self(self, u);
            current.pop_back();
        }
    };
    dfs(dfs, s);
    return out;
}

PartialValue SlackTable::down_path_sum_enumerated(int s, int t, long l) {
    auto paths = enumerate_paths(s, t);
    if (paths.empty()) return ring_zero(orbit_->at(0).ring);
    PartialValue total;
    bool first_path = true;
    for (const auto& path : paths) {
        PartialValue prod = down_slack(path.front(), l);
        for (std::size_t i = 1; i < path.size(); ++i) prod = pmul(prod, down_slack(path[i], l));
        total = first_path ? prod : padd(total, prod);
        first_path = false;
    }
    return total;
}

PartialValue SlackTable::up_path_sum_enumerated(int s, int t, long l) {
    auto paths = enumerate_paths(s, t);
    if (paths.empty()) return ring_zero(orbit_->at(0).ring);
    PartialValue total;
    bool first_path = true;
    for (const auto& path : paths) {
        PartialValue prod = up_slack(path.front(), l);
        for (std::size_t i = 1; i < path.size(); ++i) prod = pmul(prod, up_slack(path[i], l));
        total = first_path ? prod : padd(total, prod);
        first_path = false;
    }
    return total;
}

Verdict check_slack_recursions(SlackTable& table, int s, int t, long l) {
    if (s == t) throw std::invalid_argument("check_slack_recursions: s and t must differ");
    Verdict out;
    out.name = "slack_recursions";
    out.trials = 1;
    const ExtendedPoset& ext = table.extended();

    // Every path-sum term is evaluated by enumeration, so this verdict does
    // not reuse the recursion it is checking.
    PartialValue dst = table.down_path_sum_enumerated(s, t, l);
    PartialValue ust = table.up_path_sum_enumerated(s, t, l);
    const PartialValue zero(ring_zero(table.orbit().at(0).ring));

    PartialValue down_first_inner = zero, up_first_inner = zero;
    for (int u : ext.down_covers(s)) {
        down_first_inner = padd(down_first_inner, table.down_path_sum_enumerated(u, t, l));
        up_first_inner = padd(up_first_inner, table.up_path_sum_enumerated(u, t, l));
    }
    PartialValue down1 = pmul(table.down_slack(s, l), down_first_inner);
    PartialValue up1 = pmul(table.up_slack(s, l), up_first_inner);

    PartialValue down_last_inner = zero, up_last_inner = zero;
    for (int u : ext.up_covers(t)) {
        down_last_inner = padd(down_last_inner, table.down_path_sum_enumerated(s, u, l));
        up_last_inner = padd(up_last_inner, table.up_path_sum_enumerated(s, u, l));
    }
    PartialValue down2 = pmul(down_last_inner, table.down_slack(t, l));
    PartialValue up2 = pmul(up_last_inner, table.up_slack(t, l));

    if (!dst.defined() || !ust.defined() || !down1.defined() || !down2.defined() ||
        !up1.defined() || !up2.defined()) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "a term of the recursion is undefined";
        return out;
    }
    const std::string where = ext.name(s) + " -> " + ext.name(t) + " at l=" + std::to_string(l);
    if (!(dst == down1)) out.failures.push_back(mismatch("down first-step recursion " + where, dst, down1));
    if (!(dst == down2)) out.failures.push_back(mismatch("down last-step recursion " + where, dst, down2));
    if (!(ust == up1)) out.failures.push_back(mismatch("up first-step recursion " + where, ust, up1));
    if (!(ust == up2)) out.failures.push_back(mismatch("up last-step recursion " + where, ust, up2));
    out.status = out.failures.empty() ? Status::pass : Status::fail;
    return out;
}

Verdict check_transition(SlackTable& table, long l) {
    Verdict out;
    out.name = "transition";
    out.trials = 1;
    const ExtendedPoset& ext = table.extended();
    if (l < 1 || !table.orbit().defined(l)) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "needs l >= 1 with iterate l defined";
        return out;
    }
    if (!is_invertible(table.label(ext.bot(), 0))) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "BOT label is not invertible";
        return out;
    }
    for (int v = 0; v < ext.size(); ++v) {
        PartialValue lhs = table.up_slack(v, l);
        PartialValue rhs = table.down_slack(v, l - 1);
        if (!(lhs == rhs))
            out.failures.push_back(
                mismatch("up_slack(" + ext.name(v) + ", l) = down_slack(" + ext.name(v) + ", l-1)",
                         lhs, rhs));
    }
    // Path-sum corollary over a deterministic pair sample.
    const int n = ext.size();
    const long total = static_cast<long>(n) * n;
    const long stride = total <= 256 ? 1 : total / 200;
    for (long idx = 0; idx < total; idx += stride) {
        int s = static_cast<int>(idx / n), t = static_cast<int>(idx % n);
        PartialValue lhs = table.up_path_sum(s, t, l);
        PartialValue rhs = table.down_path_sum(s, t, l - 1);
        if (!(lhs == rhs))
            out.failures.push_back(mismatch("up_path_sum(" + ext.name(s) + ", " + ext.name(t) +
                                                ", l) = down_path_sum(..., l-1)",
                                            lhs, rhs));
    }
    out.status = out.failures.empty() ? Status::pass : Status::fail;
    return out;
}

Verdict check_path_formulas(SlackTable& table, long l) {
    Verdict out;
    out.name = "path_formulas";
    out.trials = 1;
    const ExtendedPoset& ext = table.extended();
    const Poset& P = table.poset();
    if (!is_invertible(table.label(ext.bot(), 0))) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "BOT label is not invertible";
        return out;
    }
    const RingElement a = table.label(ext.bot(), 0);
    const RingElement b = table.label(ext.top(), 0);
    bool ran_any = false;

    const bool can_now = l >= 1 && table.orbit().defined(l);
    const bool can_next = table.orbit().defined(l + 1);
    auto maxima = P.maximal_elements();
    auto minima = P.minimal_elements();

    for (int u = 0; u < P.size(); ++u) {
        PartialValue label(table.label(u, l));
        if (can_now) {
            ran_any = true;
            PartialValue got = pmul(pinv(table.up_path_sum(ext.top(), u, l)), PartialValue(b));
            if (!(label == got))
                out.failures.push_back(
                    mismatch("u_l = inv(up_path_sum(TOP, " + P.name(u) + ")) * b", label, got));
            if (maxima.size() == 1) {
                PartialValue got_max =
                    pmul(pinv(table.up_path_sum(maxima[0], u, l)), PartialValue(b));
                if (!(label == got_max))
                    out.failures.push_back(mismatch(
                        "u_l = inv(up_path_sum(" + P.name(maxima[0]) + ", " + P.name(u) + ")) * b",
                        label, got_max));
            }
        }
        if (can_next) {
            ran_any = true;
            PartialValue got = pmul(table.down_path_sum(u, ext.bot(), l), PartialValue(a));
            if (!(label == got))
                out.failures.push_back(
                    mismatch("u_l = down_path_sum(" + P.name(u) + ", BOT) * a", label, got));
            if (minima.size() == 1) {
                PartialValue got_min =
                    pmul(table.down_path_sum(u, minima[0], l), PartialValue(a));
                if (!(label == got_min))
                    out.failures.push_back(mismatch(
                        "u_l = down_path_sum(" + P.name(u) + ", " + P.name(minima[0]) + ") * a",
                        label, got_min));
            }
        }
    }
    if (!ran_any && P.size() > 0) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "needed iterates are not defined";
        return out;
    }
    out.status = out.failures.empty() ? Status::pass : Status::fail;
    return out;
}

Verdict check_slack_welldefinedness(SlackTable& table, long l) {
    Verdict out;
    out.name = "slack_welldefinedness";
    out.trials = 1;
    const ExtendedPoset& ext = table.extended();
    if (l < 1 || !table.orbit().defined(l) || !is_invertible(table.label(ext.bot(), 0))) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "needs l >= 1, iterate l defined, invertible BOT label";
        return out;
    }
    const auto expect_invertible = [&](const std::string& what, const PartialValue& x) {
        if (!x.defined() || !is_invertible(*x))
            out.failures.push_back(mismatch(what + " defined and invertible", x, {}));
    };
    for (int v = 0; v < table.poset().size(); ++v) {
        const std::string name = table.poset().name(v);
        expect_invertible("label(" + name + ", l)", PartialValue(table.label(v, l)));
        expect_invertible("label(" + name + ", l-1)", PartialValue(table.label(v, l - 1)));
        expect_invertible("down_slack(" + name + ", l-1)", table.down_slack(v, l - 1));
        expect_invertible("up_slack(" + name + ", l)", table.up_slack(v, l));
    }
    out.status = out.failures.empty() ? Status::pass : Status::fail;
    return out;
}

namespace {

bool rect_hypotheses(SlackTable& table, long l, Verdict& out) {
    if (l < 1 || !table.orbit().defined(l + 1)) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "needs l >= 1 with iterate l+1 defined";
        return false;
    }
    if (!is_invertible(table.label(table.extended().bot(), 0))) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "BOT label is not invertible";
        return false;
    }
    return true;
}

// The rectangle-only identities address elements by their grid coordinates;
// a poset that merely has p*q elements is not good enough.
void require_rectangle(const SlackTable& table, int p, int q) {
    const Poset& P = table.poset();
    if (p < 1 || q < 1 || P.size() != p * q)
        throw std::invalid_argument("rectangle identity: poset is not [p] x [q]");
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j) {
            const std::string want = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (P.name(rect_id(p, q, i, j)) != want)
                throw std::invalid_argument("rectangle identity: poset is not [p] x [q]");
        }
}

}  // namespace

Verdict check_four_neighbors(SlackTable& table, int p, int q, int i, int j, long l) {
    require_rectangle(table, p, q);
    if (i < 1 || i > p - 1 || j < 1 || j > q - 1)
        throw std::invalid_argument("check_four_neighbors: need 1 <= i <= p-1 and 1 <= j <= q-1");
    Verdict out;
    out.name = "four_neighbors";
    out.trials = 1;
    if (!rect_hypotheses(table, l, out)) return out;
    const int d = rect_id(p, q, i, j), v = rect_id(p, q, i + 1, j);
    const int w = rect_id(p, q, i, j + 1), u = rect_id(p, q, i + 1, j + 1);
    PartialValue dl(table.label(d, l)), vl(table.label(v, l));
    PartialValue wl(table.label(w, l)), ul(table.label(u, l));
    PartialValue shared_lhs = pmul(table.up_slack(d, l), dl);
    PartialValue shared_rhs = pmul(pinv(ul), table.down_slack(u, l));
    PartialValue lhs_a = pmul(pinv(vl), shared_lhs);
    PartialValue rhs_a = pmul(shared_rhs, wl);
    PartialValue lhs_b = pmul(pinv(wl), shared_lhs);
    PartialValue rhs_b = pmul(shared_rhs, vl);
    const std::string at = " at d=(" + std::to_string(i) + "," + std::to_string(j) +
                           "), l=" + std::to_string(l);
    if (!(lhs_a == rhs_a))
        out.failures.push_back(
            mismatch("inv(v_l)*up_slack(d)*d_l = inv(u_l)*down_slack(u)*w_l" + at, lhs_a, rhs_a));
    if (!(lhs_b == rhs_b))
        out.failures.push_back(
            mismatch("inv(w_l)*up_slack(d)*d_l = inv(u_l)*down_slack(u)*v_l" + at, lhs_b, rhs_b));
    out.status = out.failures.empty() ? Status::pass : Status::fail;
    return out;
}

Verdict check_conversion(SlackTable& table, int p, int q, int k, int i, long l) {
    require_rectangle(table, p, q);
    if (k < 2 || k > p || i < 2 || i > p)
        throw std::invalid_argument("check_conversion: need 2 <= k <= p and 2 <= i <= p");
    Verdict out;
    out.name = "conversion";
    out.trials = 1;
    if (!rect_hypotheses(table, l, out)) return out;
    PartialValue lhs = table.down_path_sum(rect_id(p, q, k, q), rect_id(p, q, i, 1), l);
    PartialValue rhs = table.up_path_sum(rect_id(p, q, k - 1, q), rect_id(p, q, i - 1, 1), l);
    if (!(lhs == rhs)) {
        out.failures.push_back(mismatch("down_path_sum((" + std::to_string(k) + ",q), (" +
                                            std::to_string(i) +
                                            ",1)) = up_path_sum(one lower on both edges)",
                                        lhs, rhs));
    }
    out.status = out.failures.empty() ? Status::pass : Status::fail;
    return out;
}

PartialValue pathjump_sum(SlackTable& table, int p, int q, int uk, int di, long l, int j) {
    require_rectangle(table, p, q);
    if (uk < 1 || uk > p || di < 1 || di > p)
        throw std::invalid_argument("pathjump_sum: endpoint coordinates out of range");
    const int r = (uk + q - 1) - di;  // rank(u) - rank(d')
    if (j < 0 || j >= r) throw std::invalid_argument("pathjump_sum: jump index out of range");
    const Orbit& orbit = table.orbit();
    const RingDescriptor ring = orbit.at(0).ring;

    // Vertices are rectangle coordinates; cover steps go one down in either
    // coordinate, the single jump step drops one rank with a strictly smaller
    // first coordinate.
    PartialValue total = ring_zero(ring);
    std::vector<std::pair<int, int>> path{{uk, q}};
    auto extend = [&](auto&& self) -> void {
        const auto [ci, cj] = path.back();
        const int step = static_cast<int>(path.size()) - 1;
        if (step == r) {
            if (!(ci == di && cj == 1)) return;
            // E_p for this path-jump-path.
            PartialValue prod = ring_one(ring);
            for (int idx = 0; idx < j; ++idx)
                prod = pmul(prod, table.down_slack(rect_id(p, q, path[static_cast<std::size_t>(idx)].first,
                                                           path[static_cast<std::size_t>(idx)].second),
                                                   l));
            prod = pmul(prod, PartialValue(table.label(
                                  rect_id(p, q, path[static_cast<std::size_t>(j)].first,
                                          path[static_cast<std::size_t>(j)].second),
                                  l)));
            prod = pmul(prod, pinv(PartialValue(table.label(
                                  rect_id(p, q, path[static_cast<std::size_t>(j) + 1].first,
                                          path[static_cast<std::size_t>(j) + 1].second),
                                  l))));
            for (int idx = j + 2; idx <= r; ++idx)
                prod = pmul(prod, table.up_slack(rect_id(p, q, path[static_cast<std::size_t>(idx)].first,
                                                         path[static_cast<std::size_t>(idx)].second),
                                                 l));
            total = padd(total, prod);
            return;
        }
        if (step == j) {
            // Jump step: to (ci - k, cj + k - 1) for k >= 1, staying in the grid.
            for (int k = 1; k <= ci - 1 && cj + k - 1 <= q; ++k) {
                path.emplace_back(ci - k, cj + k - 1);
                self(self);
                path.pop_back();
            }
        } else {
            if (ci > 1) {
                path.emplace_back(ci - 1, cj);
                self(self);
                path.pop_back();
            }
            if (cj > 1) {
                path.emplace_back(ci, cj - 1);
                self(self);
                path.pop_back();
            }
        }
    };
    extend(extend);
    return total;
}

namespace {

using PartialMatrix = std::vector<std::vector<PartialValue>>;

PartialMatrix pmat_mul(const PartialMatrix& a, const PartialMatrix& b, const RingDescriptor& ring) {
    const std::size_t n = a.size();
    PartialMatrix c(n, std::vector<PartialValue>(n, PartialValue(ring_zero(ring))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].defined() && *a[i][k] == ring_zero(ring)) continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] = padd(c[i][j], pmul(a[i][k], b[k][j]));
        }
    return c;
}

}  // namespace

Verdict check_matrix_conversion(SlackTable& table, int p, int q, long l, int k) {
    if (k < 0) throw std::invalid_argument("check_matrix_conversion: k must be >= 0");
    require_rectangle(table, p, q);
    Verdict out;
    out.name = "matrix_conversion";
    out.trials = 1;
    if (!rect_hypotheses(table, l, out)) return out;
    const Poset& P = table.poset();
    const RingDescriptor ring = table.orbit().at(0).ring;
    const std::size_t n = static_cast<std::size_t>(P.size());
    const PartialValue zero(ring_zero(ring));

    const auto coord = [q](int id) { return std::make_pair(id / q + 1, id % q + 1); };
    const auto jumps = [&](int x, int y) {
        auto [xi, xj] = coord(x);
        auto [yi, yj] = coord(y);
        return (xi + xj) == (yi + yj) + 1 && xi > yi;
    };

    PartialMatrix down(n, std::vector<PartialValue>(n, zero));
    PartialMatrix up(n, std::vector<PartialValue>(n, zero));
    PartialMatrix jump(n, std::vector<PartialValue>(n, zero));
    for (int x = 0; x < P.size(); ++x)
        for (int y = 0; y < P.size(); ++y) {
            if (P.is_cover(y, x)) {  // x covers y
                down[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = table.down_slack(x, l);
                up[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = table.up_slack(y, l);
            }
            if (jumps(x, y))
                jump[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                    pmul(PartialValue(table.label(x, l)), pinv(PartialValue(table.label(y, l))));
        }

    PartialMatrix lhs = jump, rhs = jump;
    for (int step = 0; step < k; ++step) {
        lhs = pmat_mul(down, lhs, ring);
        rhs = pmat_mul(rhs, up, ring);
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (!(lhs[x][y] == rhs[x][y]))
                out.failures.push_back(mismatch(
                    "(down^k * jump)[" + P.name(static_cast<int>(x)) + "][" +
                        P.name(static_cast<int>(y)) + "] = (jump * up^k)[...] with k=" +
                        std::to_string(k),
                    lhs[x][y], rhs[x][y]));
    out.status = out.failures.empty() ? Status::pass : Status::fail;
    return out;
}

}  // namespace birow
