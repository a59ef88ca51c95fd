#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "poset.hpp"
#include "ring.hpp"
#include "verdict.hpp"

namespace birow {

/// Total map from the extended poset to ring elements. Indexing follows
/// ExtendedPoset ids: 0..n-1 are the base elements, n is BOT, n+1 is TOP.
struct Labeling {
    RingDescriptor ring;
    std::vector<RingElement> values;

    const RingElement& at(int ext_id) const { return values.at(static_cast<std::size_t>(ext_id)); }
    RingElement& at(int ext_id) { return values.at(static_cast<std::size_t>(ext_id)); }
    bool operator==(const Labeling&) const = default;
};

/// A labeling or the absorbing Undefined: one failed toggle poisons the
/// whole labeling, not just one value.
using PartialLabeling = std::optional<Labeling>;

/// Every element of the extended poset, sentinels included, gets an
/// independent invertible draw from one seeded stream.
Labeling random_labeling(const Poset& P, const RingDescriptor& ring, std::uint64_t seed,
                         long entry_bound);
Labeling constant_labeling(const Poset& P, const RingElement& value);

nlohmann::json labeling_to_json(const Poset& P, const Labeling& f);
Labeling labeling_from_json(const Poset& P, const nlohmann::json& j);

/// Replaces f(v) by (sum of labels below v) * inv(f(v)) * inv(sum of inverted
/// labels above v), the sums running over covers in the extended poset.
/// Returns Undefined when f(v), any label above v, or the upper sum fails to
/// invert. Toggling a sentinel is a caller bug and throws.
PartialLabeling toggle(const Poset& P, const Labeling& f, int v);

/// T_v and T_w commute whenever neither covers the other (v = w included);
/// not_applicable on cover pairs.
Verdict toggle_commutes(const Poset& P, const Labeling& f, int v, int w);

/// Toggles along the canonical linear extension (v1,...,vm), applying T_vm
/// first and T_v1 last: one sweep from the top of the poset to the bottom.
PartialLabeling rowmotion(const Poset& P, const Labeling& f);

/// Same map along a caller-chosen linear extension; rejects orders that fail
/// the linear-extension predicate. Agrees exactly with rowmotion().
PartialLabeling rowmotion_via_extension(const Poset& P, const Labeling& f,
                                        const std::vector<int>& ext);

enum class OrbitTail {
    complete,   // all requested iterates were computed
    undefined,  // the next iterate is Undefined (and so are all after it)
    blowup      // the next iterate exceeded the entry-size guard; aborted
};

/// states[l] is the l-th iterate; iteration stopped after the last stored
/// entry for the reason given by tail.
struct Orbit {
    std::vector<Labeling> states;
    OrbitTail tail = OrbitTail::complete;

    bool defined(long l) const { return l >= 0 && l < static_cast<long>(states.size()); }
    const Labeling& at(long l) const { return states.at(static_cast<std::size_t>(l)); }
};

/// [f, Rf, ..., R^k f], stopping early on Undefined or when any entry of the
/// next labeling would exceed bit_cap bits.
Orbit iterate(const Poset& P, const Labeling& f, long k, std::size_t bit_cap = 100000);

nlohmann::json orbit_to_json(const Poset& P, const Orbit& orbit, long requested);

/// v_{l+1} = (sum of u_l over u covered by v) * inv(v_l) * inv(sum of
/// inv(u_{l+1}) over u covering v): rowmotion's implicit description.
Verdict check_implicit_recurrence(const Poset& P, const Orbit& orbit, long l, int v);

/// Copy of f with the BOT label replaced by the ring unity.
Labeling normalize_bottom(const Poset& P, const Labeling& f);

/// With g = normalize_bottom(f), a = f(BOT), and Rf defined: Rg is defined,
/// (Rf)(v) = (Rg)(v) at every non-minimal v of P, and (Rf)(v) = a * (Rg)(v)
/// at every minimal v.
Verdict check_bottom_normalization(const Poset& P, const Labeling& f);

}  // namespace birow
