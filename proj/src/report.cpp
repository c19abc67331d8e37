#include "alcove/report.hpp"

#include <stdexcept>

namespace alcove {

json CheckReport::to_json() const {
    json j;
    j["checked"] = checked;
    j["skipped"] = skipped;
    j["violations"] = violations;
    j["boundary_cases"] = boundary_cases;
    if (!classes.empty()) j["classes"] = classes;
    if (!notes.empty()) j["notes"] = notes;
    if (!errors.empty()) j["errors"] = errors;
    return j;
}

json weight_json(const Weight& v) { return v.to_vector(); }

Weight weight_from_json(const json& j, int rank) {
    if (!j.is_array() || static_cast<int>(j.size()) != rank)
        throw std::invalid_argument("weight must be an array of " + std::to_string(rank) + " integers");
    std::vector<int> c;
    for (const auto& x : j) c.push_back(x.get<int>());
    return Weight(std::span<const int>(c));
}

json generator_set_json(const AffineWeylGroup& g, const GeneratorSet& s) {
    json out = json::array();
    for (Generator t : s) out.push_back(g.generator_name(t));
    return out;
}

std::string generator_set_string(const AffineWeylGroup& g, const GeneratorSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + g.generator_name(s[i]);
    return out + "}";
}

json element_json(const AffineWeylGroup& g, const AffineElement& w) {
    json j;
    j["p"] = w.p();
    j["alcove"] = w.alcove();
    json word = json::array();
    for (Generator s : g.reduced_word(w)) word.push_back(g.generator_name(s));
    j["word"] = word;
    return j;
}

AffineElement element_from_json(const AffineWeylGroup& g, const json& j) {
    if (j.is_object()) {
        if (j.at("p").get<int>() != g.p()) throw std::invalid_argument("element p does not match the group");
        return g.from_alcove(j.at("alcove").get<Alcove>());
    }
    if (j.is_array()) {
        std::vector<Generator> word;
        for (const auto& t : j) {
            const auto parsed = g.parse_word(t.get<std::string>());
            word.insert(word.end(), parsed.begin(), parsed.end());
        }
        return g.from_word(word);
    }
    if (j.is_string()) return g.from_word(g.parse_word(j.get<std::string>()));
    throw std::invalid_argument("element must be an alcove object or a word");
}

}  // namespace alcove
