#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rng.hpp"
#include "verdict.hpp"

namespace birow {

enum class RingKind { exact_rational, rational_matrix, tropical_max_plus };

/// Which ring (or semiring) the computation runs over. Matrix rings are the
/// noncommutative choice; the tropical semiring is commutative and has no
/// subtraction, which is fine because none of the dynamics ever subtracts.
struct RingDescriptor {
    RingKind kind = RingKind::exact_rational;
    int dim = 0;  // matrix dimension, meaningful iff kind == rational_matrix

    bool operator==(const RingDescriptor&) const = default;
    bool commutative() const { return kind != RingKind::rational_matrix || dim == 1; }

    std::string spec() const;  // "q" | "mat:N" | "trop"
    nlohmann::json to_json() const;
    static RingDescriptor from_spec(const std::string& s);
    // Accepts either the JSON object form or a spec string.
    static RingDescriptor from_json(const nlohmann::json& j);
};

/// Square matrix of exact rationals, row-major storage.
struct MatQ {
    int dim = 0;
    std::vector<mpq_class> entries;

    mpq_class& at(int r, int c) { return entries[static_cast<std::size_t>(r) * dim + c]; }
    const mpq_class& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * dim + c];
    }
    bool operator==(const MatQ&) const = default;
};

/// Max-plus value: -inf (the additive identity) or a finite rational.
struct TropVal {
    bool finite = false;
    mpq_class t;  // kept at zero when not finite, so equality can ignore it

    bool operator==(const TropVal& o) const {
        return finite == o.finite && (!finite || t == o.t);
    }
};

/// All payloads are canonical (rationals in lowest terms, positive
/// denominator), so operator== is structural equality in the ring.
struct RingElement {
    RingDescriptor ring;
    std::variant<mpq_class, MatQ, TropVal> payload;
    bool operator==(const RingElement&) const = default;
};

/// A ring element or the absorbing Undefined sentinel. Every arithmetic
/// helper taking PartialValue propagates Undefined unconditionally.
struct PartialValue {
    std::optional<RingElement> value;

    PartialValue() = default;  // Undefined
    PartialValue(RingElement e) : value(std::move(e)) {}

    bool defined() const { return value.has_value(); }
    const RingElement& operator*() const { return *value; }
    bool operator==(const PartialValue&) const = default;
};

RingElement ring_zero(const RingDescriptor& d);
RingElement ring_one(const RingDescriptor& d);

// Both operands must share a descriptor; mismatch is a caller bug and throws.
RingElement add(const RingElement& x, const RingElement& y);
RingElement mul(const RingElement& x, const RingElement& y);

/// Two-sided inverse, or Undefined when none exists (zero, singular matrix,
/// tropical -inf). Never throws: non-invertibility is in-band.
PartialValue try_invert(const RingElement& x);
bool is_invertible(const RingElement& x);

PartialValue padd(const PartialValue& x, const PartialValue& y);
PartialValue pmul(const PartialValue& x, const PartialValue& y);
PartialValue pinv(const PartialValue& x);

std::string to_string(const RingElement& x);
std::string to_string(const PartialValue& x);  // "undef" when undefined

/// Largest bit length among all numerators and denominators in x. Used by the
/// orbit iterator's growth guard.
std::size_t bit_size(const RingElement& x);

// Serialization: rationals as "p/q" strings, matrices as row-major arrays of
// such strings, tropical values as {"t": "p/q"} or {"t": "-inf"}.
nlohmann::json element_to_json(const RingElement& x);
RingElement element_from_json(const RingDescriptor& d, const nlohmann::json& j);
mpq_class rational_from_string(const std::string& s);
std::string rational_to_string(const mpq_class& q);

/// Deterministic invertible element: same (descriptor, seed, bound) always
/// yields the same element. Matrices are rejection-sampled; after 1000
/// failures (astronomically unlikely for bound >= 2) this throws.
RingElement random_invertible(const RingDescriptor& d, std::uint64_t seed, long entry_bound);
RingElement random_invertible(const RingDescriptor& d, SplitMix64& rng, long entry_bound);

/// Unconstrained draw; may be zero / singular / -inf. For tests that need
/// non-invertible labels to occur.
RingElement random_element(const RingDescriptor& d, SplitMix64& rng, long entry_bound);

/// inv(inv(x)) = x and inv(x*y) = inv(y)*inv(x); not_applicable unless both
/// arguments are invertible.
Verdict check_inverse_laws(const RingElement& x, const RingElement& y);

/// For invertible a+b: a*inv(a+b)*b = b*inv(a+b)*a, and when a, b are both
/// invertible, inv(a)+inv(b) is invertible with inverse a*inv(a+b)*b.
Verdict check_sum_inverse_identity(const RingElement& a, const RingElement& b);

}  // namespace birow
