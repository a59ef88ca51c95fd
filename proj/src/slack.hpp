#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "poset.hpp"
#include "ring.hpp"
#include "rowmotion.hpp"
#include "verdict.hpp"

namespace birow {

/// Per-orbit cache of down/up slacks and path sums over the extended poset.
///
/// For v in P and iterate index l:
///   down_slack(v, l) = v_l * inv(sum of u_l over u covered by v)
///   up_slack(v, l)   = inv(sum of inv(u_l) over u covering v) * inv(v_l)
/// and both are the ring unity at BOT and TOP. A path is a descending chain
/// of covers in the extended poset; a path sum adds, over all paths from s
/// to t, the left-to-right product of the vertex slacks. No paths (t not
/// below s) gives the additive identity.
///
/// Path sums are computed by the first-step recursion (dynamic programming);
/// enumeration-based equivalents exist as an independent oracle. The memo is
/// transparent: cached and uncached evaluations agree exactly.
class SlackTable {
public:
    SlackTable(const Poset& P, const Orbit& orbit);
    SlackTable(Poset&&, const Orbit&) = delete;  // the table must not outlive the poset
    SlackTable(const Poset&, Orbit&&) = delete;  // nor the orbit it reads labels from

    const Poset& poset() const { return *P_; }
    const ExtendedPoset& extended() const { return ext_; }
    const Orbit& orbit() const { return *orbit_; }

    /// Label of extended element v at iterate l (orbit must define l).
    const RingElement& label(int v, long l) const;

    PartialValue down_slack(int v, long l);
    PartialValue up_slack(int v, long l);
    PartialValue down_slack_uncached(int v, long l) const;
    PartialValue up_slack_uncached(int v, long l) const;

    PartialValue down_path_sum(int s, int t, long l);
    PartialValue up_path_sum(int s, int t, long l);

    /// All descending cover paths s -> t in the extended poset, as vertex
    /// lists. Throws once more than 10^6 paths exist.
    std::vector<std::vector<int>> enumerate_paths(int s, int t) const;
    PartialValue down_path_sum_enumerated(int s, int t, long l);
    PartialValue up_path_sum_enumerated(int s, int t, long l);

private:
    const Poset* P_;
    ExtendedPoset ext_;
    const Orbit* orbit_;
    std::map<std::pair<int, long>, PartialValue> down_memo_, up_memo_;
    std::map<std::tuple<int, int, long>, PartialValue> down_sum_memo_, up_sum_memo_;
};

/// First-step and last-step recursions for both path-sum families, evaluated
/// with enumeration-based sums so the verdict is independent of the dynamic
/// programming they justify. Requires s != t; not_applicable when any term
/// is undefined.
Verdict check_slack_recursions(SlackTable& table, int s, int t, long l);

/// up_slack(v, l) = down_slack(v, l-1) at every extended element, plus the
/// same identity for path sums over a deterministic sample of (s, t) pairs.
/// Needs l >= 1, the l-th iterate defined, and an invertible BOT label.
Verdict check_transition(SlackTable& table, long l);

/// Label recovery from path sums: for every u in P,
///   (a) u_l = inv(up_path_sum(TOP, u, l)) * b        (l >= 1)
///   (b) u_l = down_path_sum(u, BOT, l) * a           (iterate l+1 defined)
///   (c) u_l = inv(up_path_sum(max, u, l)) * b        (unique maximum; l >= 1)
///   (d) u_l = down_path_sum(u, min, l) * a           (unique minimum; l+1 defined)
/// (a) and (b) apply to any finite poset; (c) and (d) run only when the
/// poset has a unique maximum / minimum. The BOT label must be invertible.
Verdict check_path_formulas(SlackTable& table, long l);

/// Under the hypotheses (l >= 1, iterate l defined, BOT label invertible),
/// v_l, v_(l-1), down_slack(v, l-1), and up_slack(v, l) are all defined and
/// invertible for every v in P.
Verdict check_slack_welldefinedness(SlackTable& table, long l);

/// Rectangle [p] x [q] only. With d=(i,j), v=(i+1,j), w=(i,j+1), u=(i+1,j+1):
///   (a) inv(v_l) * up_slack(d) * d_l = inv(u_l) * down_slack(u) * w_l
///   (b) inv(w_l) * up_slack(d) * d_l = inv(u_l) * down_slack(u) * v_l
Verdict check_four_neighbors(SlackTable& table, int p, int q, int i, int j, long l);

/// Rectangle only: down_path_sum((k,q), (i,1), l) equals
/// up_path_sum((k-1,q), (i-1,1), l) for k, i in 2..p.
Verdict check_conversion(SlackTable& table, int p, int q, int k, int i, long l);

/// Sum of E_p over path-jump-paths from u = (uk, q) to d' = (di, 1) with the
/// jump at position j, where for vertices (v_0, ..., v_r) with jump at j
///   E_p = down(v_0)...down(v_(j-1)) * v_j * inv(v_(j+1)) * up(v_(j+2))...up(v_r),
/// all at iterate l. A jump step goes from x to some y one rank down with a
/// strictly smaller first coordinate. The sum is constant in j; its extremes
/// reproduce the two sides of the conversion identity.
PartialValue pathjump_sum(SlackTable& table, int p, int q, int uk, int di, long l, int j);

/// Rectangle only: with P x P matrices D[x][y] = down_slack(x)[x covers y],
/// T[x][y] = up_slack(y)[x covers y], U[x][y] = x_l * inv(y_l)[x jumps to y],
/// asserts D^k U = U T^k entrywise.
Verdict check_matrix_conversion(SlackTable& table, int p, int q, long l, int k);

}  // namespace birow
