#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "poset.hpp"
#include "ring.hpp"
#include "rowmotion.hpp"
#include "verdict.hpp"

namespace birow {

/// Shared configuration for the randomized checkers. Trial t of a run uses
/// seed + t, so runs are reproducible and trials are independent.
struct TrialConfig {
    /// Family spec string ("rect:2x2", ...) or a poset JSON object.
    nlohmann::json poset = "rect:2x2";
    RingDescriptor ring{RingKind::rational_matrix, 2};
    std::uint64_t seed = 1;
    long entry_bound = 9;
    /// 0 picks a per-check default (for example p+q for rectangle checks).
    long max_iterations = 0;
    long trials = 10;

    Poset build_poset() const;
    nlohmann::json to_json() const;
    static TrialConfig from_json(const nlohmann::json& j);
};

/// On the [p] x [q] rectangle, R^{p+q}f twists every label by conjugation:
/// (R^{p+q}f)(x) = a * inv(b) * f(x) * inv(a) * b at every x of the extended
/// poset, with a, b invertible whenever the iterate is defined.
Verdict verify_periodicity(const TrialConfig& cfg);

/// Antipodal reciprocity on the rectangle: for every (i,j) and every l with
/// l - i - j + 1 >= 0 and R^l f defined,
///   (R^l f)(i,j) = a * inv((R^{l-i-j+1} f)(p+1-i, q+1-j)) * b.
Verdict verify_reciprocity(const TrialConfig& cfg);

/// Computes the twisted-periodicity claim two ways: directly, and by chaining
/// two antipodal reciprocity evaluations (l = p+q down to l = p+q-i-j+1 down
/// to l = 0), asserting each link and the agreement of the two routes. A
/// consistency cross-check, not a proof.
Verdict verify_reciprocity_implies_periodicity(const TrialConfig& cfg);

/// On any finite poset with Rf defined and the needed inverses existing:
///   b * (sum over u covering BOT of inv((Rf)(u))) * a = sum over u covered
///   by TOP of f(u).
Verdict verify_bottom_top(const TrialConfig& cfg);

/// With unit boundary labels, the sum of f(u) * inv(f(v)) over cover pairs
/// u covered by v in the extended poset is constant along the orbit.
Verdict verify_invariant_sum(const TrialConfig& cfg);

enum class ConjectureFamily { delta, nabla, tria, trapezoid };

/// Empirical probes of the conjectured periods: delta:P and nabla:P return
/// after p steps up to the conjugation twist and a coordinate transpose;
/// tria:P after 2p steps and trap:P,S after p steps, twist only. A pass is
/// reported as "consistent with conjecture (N trials)", never as proof; a
/// failing trial is serialized in full as a counterexample candidate.
Verdict probe_conjecture(ConjectureFamily family, const TrialConfig& cfg);

/// Parses the family from the config's poset spec and probes it.
Verdict probe_conjecture(const TrialConfig& cfg);

/// Fixed 2x2-matrix labeling of the claw whose rowmotion orbit never returns:
/// R^m f differs from f (and stays defined) for m = 1..60, while R^{6i} f
/// walks the explicit two-parameter family f_{(y,z)} along the affine map
/// (y,z) -> ((5y+4z)/9, (4y+5z)/9) starting from (0,1).
Verdict claw_counterexample();

/// Over the commutative tropical max-plus semiring the twist cancels, so the
/// rectangle satisfies plain periodicity: R^{p+q} f = f.
Verdict tropical_periodicity(const TrialConfig& cfg);

/// Dispatch by check name: periodicity | reciprocity |
/// reciprocity_implies_periodicity | bottom_top | invariant_sum | conjecture |
/// claw_counterexample | tropical_periodicity. Unknown names throw.
Verdict run_check(const std::string& name, const TrialConfig& cfg);

}  // namespace birow
