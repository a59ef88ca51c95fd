#include "birow.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "poset.hpp"
#include "ring.hpp"
#include "rowmotion.hpp"
#include "slack.hpp"
#include "verify.hpp"

struct birow_poset {
    birow::Poset poset;
};

struct birow_labeling {
    birow::Labeling labeling;
    // Element names of the poset this labeling was built for, in id order.
    // Two posets of equal size are otherwise indistinguishable here.
    std::vector<std::string> element_names;
};

namespace {

thread_local std::string g_last_error = "no error";

birow_status fail(birow_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

/// Runs fn, translating exceptions to status codes: JSON text errors map to
/// PARSE, domain validation to INVALID_ARGUMENT, everything else to INTERNAL.
template <typename Fn>
birow_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const nlohmann::json::parse_error& e) {
        return fail(BIROW_ERR_PARSE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(BIROW_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(BIROW_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BIROW_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(BIROW_ERR_INTERNAL, "unknown error");
    }
}

birow_status require(bool ok, const char* what) {
    if (ok) return BIROW_OK;
    return fail(BIROW_ERR_INVALID_ARGUMENT, std::string("null argument: ") + what);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<std::string> element_names(const birow::Poset& P) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(P.size()));
    for (int v = 0; v < P.size(); ++v) names.push_back(P.name(v));
    return names;
}

/// A labeling only means something relative to the poset it was built for;
/// equal sizes are not enough (the claw and the 2x2 rectangle both have
/// four elements).
void require_same_poset(const birow_poset* p, const birow_labeling* f) {
    if (f->element_names != element_names(p->poset))
        throw std::invalid_argument("labeling does not match the poset");
}

}  // namespace

extern "C" {

const char* birow_last_error(void) { return g_last_error.c_str(); }

void birow_string_free(char* s) { std::free(s); }

const char* birow_version(void) { return "0.1.0"; }

birow_status birow_poset_create(const char* spec, birow_poset** out) {
    if (require(spec != nullptr, "spec") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out != nullptr, "out") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new birow_poset{birow::Poset::from_spec(spec)};
        return BIROW_OK;
    });
}

birow_status birow_poset_create_from_json(const char* json, birow_poset** out) {
    if (require(json != nullptr, "json") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out != nullptr, "out") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new birow_poset{birow::Poset::from_json(nlohmann::json::parse(json))};
        return BIROW_OK;
    });
}

void birow_poset_destroy(birow_poset* p) { delete p; }

birow_status birow_poset_to_json(const birow_poset* p, char** out_json) {
    if (require(p != nullptr, "poset") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out_json != nullptr, "out_json") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out_json = dup_string(p->poset.to_json().dump());
        return BIROW_OK;
    });
}

birow_status birow_poset_size(const birow_poset* p, int* out_size) {
    if (require(p != nullptr, "poset") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out_size != nullptr, "out_size") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    *out_size = p->poset.size();
    return BIROW_OK;
}

birow_status birow_labeling_random(const birow_poset* p, const char* ring_json, uint64_t seed,
                                   long entry_bound, birow_labeling** out) {
    if (require(p != nullptr, "poset") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(ring_json != nullptr, "ring_json") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out != nullptr, "out") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const std::string text(ring_json);
        // Accept a bare spec like mat:2 as well as JSON ("mat:2" or a
        // descriptor object).
        birow::RingDescriptor ring;
        if (!text.empty() && (text.front() == '{' || text.front() == '"'))
            ring = birow::RingDescriptor::from_json(nlohmann::json::parse(text));
        else
            ring = birow::RingDescriptor::from_spec(text);
        if (entry_bound < 1) throw std::invalid_argument("entry_bound must be >= 1");
        *out = new birow_labeling{birow::random_labeling(p->poset, ring, seed, entry_bound),
                                 element_names(p->poset)};
        return BIROW_OK;
    });
}

birow_status birow_labeling_create_from_json(const birow_poset* p, const char* json,
                                             birow_labeling** out) {
    if (require(p != nullptr, "poset") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(json != nullptr, "json") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out != nullptr, "out") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new birow_labeling{
            birow::labeling_from_json(p->poset, nlohmann::json::parse(json)),
            element_names(p->poset)};
        return BIROW_OK;
    });
}

void birow_labeling_destroy(birow_labeling* f) { delete f; }

birow_status birow_labeling_to_json(const birow_poset* p, const birow_labeling* f,
                                    char** out_json) {
    if (require(p != nullptr, "poset") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(f != nullptr, "labeling") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out_json != nullptr, "out_json") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        require_same_poset(p, f);
        *out_json = dup_string(birow::labeling_to_json(p->poset, f->labeling).dump());
        return BIROW_OK;
    });
}

birow_status birow_orbit_json(const birow_poset* p, const birow_labeling* f, long steps,
                              char** out_json) {
    if (require(p != nullptr, "poset") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(f != nullptr, "labeling") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out_json != nullptr, "out_json") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        if (steps < 0) throw std::invalid_argument("steps must be >= 0");
        require_same_poset(p, f);
        const birow::Orbit orbit = birow::iterate(p->poset, f->labeling, steps);
        *out_json = dup_string(birow::orbit_to_json(p->poset, orbit, steps).dump());
        return BIROW_OK;
    });
}

birow_status birow_slack_table_json(const birow_poset* p, const birow_labeling* f, long max_ell,
                                    char** out_json) {
    if (require(p != nullptr, "poset") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(f != nullptr, "labeling") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out_json != nullptr, "out_json") != BIROW_OK) return BIROW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        if (max_ell < 0) throw std::invalid_argument("max_ell must be >= 0");
        require_same_poset(p, f);
        const birow::Orbit orbit = birow::iterate(p->poset, f->labeling, max_ell);
        birow::SlackTable table(p->poset, orbit);
        const birow::ExtendedPoset& ext = table.extended();
        nlohmann::json records = nlohmann::json::array();
        for (long ell = 0; orbit.defined(ell) && ell <= max_ell; ++ell)
            for (int v = 0; v < ext.size(); ++v) {
                const birow::PartialValue down = table.down_slack(v, ell);
                const birow::PartialValue up = table.up_slack(v, ell);
                nlohmann::json rec;
                rec["element"] = ext.name(v);
                rec["ell"] = ell;
                rec["down"] = down.defined() ? birow::element_to_json(*down)
                                             : nlohmann::json("undefined");
                rec["up"] =
                    up.defined() ? birow::element_to_json(*up) : nlohmann::json("undefined");
                records.push_back(std::move(rec));
            }
        nlohmann::json out;
        out["ring"] = f->labeling.ring.spec();
        out["slacks"] = std::move(records);
        out["tail"] = orbit.tail == birow::OrbitTail::complete
                          ? "complete"
                          : (orbit.tail == birow::OrbitTail::undefined ? "undefined" : "blowup");
        *out_json = dup_string(out.dump());
        return BIROW_OK;
    });
}

birow_status birow_run_check(const char* check_name, const char* config_json,
                             char** out_report_json) {
    if (require(check_name != nullptr, "check_name") != BIROW_OK)
        return BIROW_ERR_INVALID_ARGUMENT;
    if (require(out_report_json != nullptr, "out_report_json") != BIROW_OK)
        return BIROW_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        birow::TrialConfig cfg;
        if (config_json != nullptr && config_json[0] != '\0')
            cfg = birow::TrialConfig::from_json(nlohmann::json::parse(config_json));
        birow::Verdict verdict;
        try {
            verdict = birow::run_check(check_name, cfg);
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()).rfind("unknown check", 0) == 0)
                return fail(BIROW_ERR_UNSUPPORTED, e.what());
            throw;
        }
        *out_report_json = dup_string(verdict.to_json().dump());
        return BIROW_OK;
    });
}

}  // extern "C"
