#include "rowmotion.hpp"

#include <stdexcept>

namespace birow {

Labeling random_labeling(const Poset& P, const RingDescriptor& ring, std::uint64_t seed,
                         long entry_bound) {
    SplitMix64 rng(seed);
    Labeling f;
    f.ring = ring;
    f.values.reserve(static_cast<std::size_t>(P.size()) + 2);
    for (int v = 0; v < P.size() + 2; ++v) f.values.push_back(random_invertible(ring, rng, entry_bound));
    return f;
}

Labeling constant_labeling(const Poset& P, const RingElement& value) {
    Labeling f;
    f.ring = value.ring;
    f.values.assign(static_cast<std::size_t>(P.size()) + 2, value);
    return f;
}

nlohmann::json labeling_to_json(const Poset& P, const Labeling& f) {
    ExtendedPoset ext(P);
    nlohmann::json labels = nlohmann::json::object();
    for (int v = 0; v < ext.size(); ++v) labels[ext.name(v)] = element_to_json(f.at(v));
    nlohmann::json j;
    j["ring"] = f.ring.to_json();
    j["labels"] = labels;
    return j;
}

Labeling labeling_from_json(const Poset& P, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("ring"))
        throw std::invalid_argument("labeling json: missing \"ring\"");
    if (!j.contains("labels") || !j.at("labels").is_object())
        throw std::invalid_argument("labeling json: missing \"labels\" object");
    RingDescriptor ring = RingDescriptor::from_json(j.at("ring"));
    const auto& labels = j.at("labels");
    ExtendedPoset ext(P);
    Labeling f;
    f.ring = ring;
    f.values.reserve(static_cast<std::size_t>(ext.size()));
    for (int v = 0; v < ext.size(); ++v) {
        const std::string key = ext.name(v);
        if (!labels.contains(key))
            throw std::invalid_argument("labeling json: missing label for element '" + key + "'");
        f.values.push_back(element_from_json(ring, labels.at(key)));
    }
    if (labels.size() != static_cast<std::size_t>(ext.size())) {
        for (auto it = labels.begin(); it != labels.end(); ++it) {
            bool known = false;
            for (int v = 0; v < ext.size(); ++v)
                if (ext.name(v) == it.key()) {
                    known = true;
                    break;
                }
            if (!known)
                throw std::invalid_argument("labeling json: unknown element '" + it.key() + "'");
        }
    }
    return f;
}

namespace {

/// The new label at v, or Undefined. Shared by toggle and the recurrence
/// checker so they cannot drift apart.
PartialValue toggled_label(const ExtendedPoset& ext, const Labeling& f, int v) {
    PartialValue inv_v = try_invert(f.at(v));
    if (!inv_v.defined()) return {};
    RingElement lower = ring_zero(f.ring);
    for (int u : ext.down_covers(v)) lower = add(lower, f.at(u));
    PartialValue upper;
    bool first = true;
    for (int u : ext.up_covers(v)) {
        PartialValue iu = try_invert(f.at(u));
        if (!iu.defined()) return {};
        upper = first ? iu : padd(upper, iu);
        first = false;
    }
    // Every element of the extended poset has at least TOP above it.
    PartialValue inv_upper = pinv(upper);
    if (!inv_upper.defined()) return {};
    return pmul(pmul(PartialValue(lower), inv_v), inv_upper);
}

}  // namespace

PartialLabeling toggle(const Poset& P, const Labeling& f, int v) {
    if (v < 0 || v >= P.size())
        throw std::invalid_argument("toggle: element id out of range (sentinels cannot be toggled)");
    ExtendedPoset ext(P);
    PartialValue nv = toggled_label(ext, f, v);
    if (!nv.defined()) return std::nullopt;
    Labeling g = f;
    g.at(v) = *nv;
    return g;
}

Verdict toggle_commutes(const Poset& P, const Labeling& f, int v, int w) {
    Verdict out;
    out.name = "toggle_commutation";
    out.trials = 1;
    if (v != w && (P.is_cover(v, w) || P.is_cover(w, v))) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "elements form a cover pair";
        return out;
    }
    const auto apply = [&](int first, int second) -> PartialLabeling {
        PartialLabeling mid = toggle(P, f, first);
        if (!mid) return std::nullopt;
        return toggle(P, *mid, second);
    };
    PartialLabeling vw = apply(w, v);  // T_v . T_w
    PartialLabeling wv = apply(v, w);  // T_w . T_v
    if (vw == wv) {
        out.status = Status::pass;
        return out;
    }
    out.status = Status::fail;
    nlohmann::json witness;
    witness["v"] = P.name(v);
    witness["w"] = P.name(w);
    witness["Tv_Tw_defined"] = vw.has_value();
    witness["Tw_Tv_defined"] = wv.has_value();
    if (vw && wv) {
        witness["Tv_Tw"] = labeling_to_json(P, *vw);
        witness["Tw_Tv"] = labeling_to_json(P, *wv);
    }
    out.failures.push_back(std::move(witness));
    return out;
}

PartialLabeling rowmotion(const Poset& P, const Labeling& f) {
    return rowmotion_via_extension(P, f, P.linear_extension());
}

PartialLabeling rowmotion_via_extension(const Poset& P, const Labeling& f,
                                        const std::vector<int>& ext) {
    if (!P.is_linear_extension(ext))
        throw std::invalid_argument("rowmotion: order is not a linear extension of the poset");
    ExtendedPoset hat(P);
    Labeling g = f;
    for (auto it = ext.rbegin(); it != ext.rend(); ++it) {
        PartialValue nv = toggled_label(hat, g, *it);
        if (!nv.defined()) return std::nullopt;
        g.at(*it) = *nv;
    }
    return g;
}

Orbit iterate(const Poset& P, const Labeling& f, long k, std::size_t bit_cap) {
    Orbit orbit;
    orbit.states.push_back(f);
    for (long l = 1; l <= k; ++l) {
        PartialLabeling next = rowmotion(P, orbit.states.back());
        if (!next) {
            orbit.tail = OrbitTail::undefined;
            return orbit;
        }
        std::size_t worst = 0;
        for (const auto& value : next->values) {
            std::size_t b = bit_size(value);
            if (b > worst) worst = b;
        }
        if (worst > bit_cap) {
            orbit.tail = OrbitTail::blowup;
            return orbit;
        }
        orbit.states.push_back(std::move(*next));
    }
    orbit.tail = OrbitTail::complete;
    return orbit;
}

nlohmann::json orbit_to_json(const Poset& P, const Orbit& orbit, long requested) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& state : orbit.states) entries.push_back(labeling_to_json(P, state));
    if (orbit.tail == OrbitTail::undefined)
        for (long l = static_cast<long>(orbit.states.size()); l <= requested; ++l)
            entries.push_back("undefined");
    nlohmann::json j;
    j["entries"] = entries;
    j["steps_requested"] = requested;
    switch (orbit.tail) {
        case OrbitTail::complete: j["tail"] = "complete"; break;
        case OrbitTail::undefined: j["tail"] = "undefined"; break;
        case OrbitTail::blowup: j["tail"] = "blowup"; break;
    }
    return j;
}

Verdict check_implicit_recurrence(const Poset& P, const Orbit& orbit, long l, int v) {
    Verdict out;
    out.name = "implicit_recurrence";
    out.trials = 1;
    if (v < 0 || v >= P.size()) throw std::invalid_argument("check_implicit_recurrence: bad element id");
    if (!orbit.defined(l + 1)) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "iterate l+1 is not defined";
        return out;
    }
    ExtendedPoset ext(P);
    const Labeling& now = orbit.at(l);
    const Labeling& next = orbit.at(l + 1);
    RingElement lower = ring_zero(now.ring);
    for (int u : ext.down_covers(v)) lower = add(lower, now.at(u));
    PartialValue upper;
    bool first = true;
    for (int u : ext.up_covers(v)) {
        upper = first ? pinv(PartialValue(next.at(u))) : padd(upper, pinv(PartialValue(next.at(u))));
        first = false;
    }
    PartialValue rhs = pmul(pmul(PartialValue(lower), pinv(PartialValue(now.at(v)))), pinv(upper));
    PartialValue lhs(next.at(v));
    if (rhs == lhs) {
        out.status = Status::pass;
        return out;
    }
    out.status = Status::fail;
    nlohmann::json witness;
    witness["element"] = P.name(v);
    witness["l"] = l;
    witness["formula"] = "v_(l+1) = (sum_{u<v} u_l) * inv(v_l) * inv(sum_{u>v} inv(u_(l+1)))";
    witness["lhs"] = to_string(lhs);
    witness["rhs"] = to_string(rhs);
    out.failures.push_back(std::move(witness));
    return out;
}

Labeling normalize_bottom(const Poset& P, const Labeling& f) {
    ExtendedPoset ext(P);
    Labeling g = f;
    g.at(ext.bot()) = ring_one(f.ring);
    return g;
}

Verdict check_bottom_normalization(const Poset& P, const Labeling& f) {
    Verdict out;
    out.name = "bottom_normalization";
    out.trials = 1;
    ExtendedPoset ext(P);
    const RingElement a = f.at(ext.bot());
    PartialLabeling rf = rowmotion(P, f);
    if (!rf) {
        out.status = Status::not_applicable;
        out.detail["reason"] = "Rf is undefined";
        return out;
    }
    Labeling g = normalize_bottom(P, f);
    PartialLabeling rg = rowmotion(P, g);
    const auto record = [&](const std::string& claim, const std::string& lhs, const std::string& rhs,
                            const std::string& where) {
        nlohmann::json w;
        w["claim"] = claim;
        w["element"] = where;
        w["lhs"] = lhs;
        w["rhs"] = rhs;
        out.failures.push_back(std::move(w));
    };
    if (!rg) {
        record("Rg defined whenever Rf is", "undef", "defined", "-");
        out.status = Status::fail;
        return out;
    }
    std::vector<bool> minimal(static_cast<std::size_t>(P.size()), false);
    for (int v : P.minimal_elements()) minimal[static_cast<std::size_t>(v)] = true;
    for (int v = 0; v < P.size(); ++v) {
        if (minimal[static_cast<std::size_t>(v)]) {
            RingElement expect = mul(a, rg->at(v));
            if (!(rf->at(v) == expect))
                record("(Rf)(v) = a * (Rg)(v) at minimal v", to_string(rf->at(v)), to_string(expect),
                       P.name(v));
        } else if (!(rf->at(v) == rg->at(v))) {
            record("(Rf)(v) = (Rg)(v) at non-minimal v", to_string(rf->at(v)), to_string(rg->at(v)),
                   P.name(v));
        }
    }
    out.status = out.failures.empty() ? Status::pass : Status::fail;
    return out;
}

}  // namespace birow
