#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace birow {

// Outcome of one named check.
//   pass / fail        : the identity was tested and held / was violated
//   not_applicable     : the check's hypotheses never applied (e.g. empty poset)
//   undefined_orbit    : every trial hit an undefined labeling before the
//                        identity could be tested, so it asserts nothing
//   blowup             : a trial was aborted because entries outgrew the
//                        size guard; reported distinctly, never as fail
enum class Status { pass, fail, not_applicable, undefined_orbit, blowup };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::not_applicable: return "not_applicable";
        case Status::undefined_orbit: return "undefined_orbit";
        case Status::blowup: return "blowup";
    }
    return "?";
}

struct Verdict {
    std::string name;
    Status status = Status::not_applicable;
    long trials = 0;
    // One JSON object per failing trial: seed, poset, offending element,
    // both sides of the violated identity. Empty unless status == fail.
    std::vector<nlohmann::json> failures;
    // Free-form counts / notes (e.g. how many trials were undefined).
    nlohmann::json detail = nlohmann::json::object();

    bool failed() const { return status == Status::fail; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["check"] = name;
        j["status"] = status_name(status);
        j["trials"] = trials;
        j["failures"] = failures;
        if (!detail.empty()) j["detail"] = detail;
        return j;
    }
};

} // namespace birow
