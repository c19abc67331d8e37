#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "alcove/weight.hpp"
#include "alcove/weylaff.hpp"

namespace alcove {

using json = nlohmann::ordered_json;

inline constexpr const char* kLibraryVersion = "1.0.0";

/// Result of an exhaustive verification sweep.
struct CheckReport {
    std::int64_t checked = 0;
    std::int64_t skipped = 0;
    json violations = json::array();
    json boundary_cases = json::array();
    json classes = json::object();
    json notes = json::object();
    json errors = json::array();  // regime or search-bound failures
    // one row per examined case, for flat output
    std::vector<std::string> case_columns;
    std::vector<std::vector<std::string>> cases;

    bool ok() const { return violations.empty() && errors.empty(); }
    json to_json() const;
};

json weight_json(const Weight& v);
Weight weight_from_json(const json& j, int rank);
json generator_set_json(const AffineWeylGroup& g, const GeneratorSet& s);
/// "{s0,s2}"
std::string generator_set_string(const AffineWeylGroup& g, const GeneratorSet& s);
/// {"p": p, "alcove": [...], "word": ["s1", ...]}
json element_json(const AffineWeylGroup& g, const AffineElement& w);
/// Accepts {"p", "alcove"} objects and reduced-word arrays of generator names.
AffineElement element_from_json(const AffineWeylGroup& g, const json& j);

/// Runs body(i) for i in [0, n) on up to jobs threads. Callers write into
/// per-index slots, so results do not depend on scheduling.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += workers) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace alcove
