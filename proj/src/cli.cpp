#include "alcove/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "alcove/charring.hpp"
#include "alcove/klpoly.hpp"
#include "alcove/lcf.hpp"
#include "alcove/order.hpp"
#include "alcove/report.hpp"

namespace alcove {

namespace {

/// Usage errors detected after parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string type = "A";
    int rank = 1;
    int p = 3;
    std::string word, y, w, weight, lambda = "auto", mu, chi, times, nu, kind = "weyl", base = "both";
    std::string kl_eval = "one";
    std::string output = "json";
    std::string cache;
    int max_len = -1;
    int box = 15;
    int jobs = 1;
    bool assume_lcf = false;
    bool wplus = false;
    std::string suite, action;
};

/// Output of one command: structured result, a flat table and optional plain lines.
struct Result {
    json value;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> plain;
    int exit_code = kExitPass;
};

std::string coords(const Weight& v) {
    std::string s;
    for (int i = 0; i < v.rank(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

Weight parse_weight(const std::string& text, int rank, const char* what) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return c == '(' || c == ')' || c == '[' || c == ']' || std::isspace(c); }),
            t.end());
    std::vector<int> c;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size()) throw UsageError(std::string("bad ") + what + " '" + text + "'");
        c.push_back(v);
    }
    if (static_cast<int>(c.size()) != rank)
        throw UsageError(std::string(what) + " '" + text + "' needs " + std::to_string(rank) + " coordinates");
    return Weight(std::span<const int>(c));
}

std::string word_of(const AffineWeylGroup& g, const AffineElement& w) {
    const auto s = g.word_string(g.reduced_word(w));
    return s.empty() ? "e" : s;
}

class Session {
public:
    Session(const Options& o, std::string command) : o_(o), command_(std::move(command)) {
        if (o_.rank < 1 || o_.rank > 4) throw UsageError("--rank must be between 1 and 4");
        if (o_.p < 2) throw UsageError("--p must be at least 2");
        try {
            rs_ = std::make_shared<const RootSystem>(RootSystem::build(parse_series(o_.type), o_.rank));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        group_ = std::make_shared<const AffineWeylGroup>(rs_, o_.p);
        if (o_.kl_eval != "one" && o_.kl_eval != "minus-one") throw UsageError("--kl-eval must be one or minus-one");
        cache_dir_ = o_.cache;
        if (cache_dir_.empty())
            if (const char* env = std::getenv(kCacheEnv)) cache_dir_ = env;
    }

    const AffineWeylGroup& g() const { return *group_; }
    std::shared_ptr<const AffineWeylGroup> group_ptr() const { return group_; }
    const RootSystem& rs() const { return *rs_; }
    const Options& opts() const { return o_; }

    Weight weight(const std::string& text, const char* what) const { return parse_weight(text, rs_->rank(), what); }

    Weight lambda() const {
        if (o_.lambda == "auto") {
            if (group_->cminus_points().empty())
                throw UsageError("automatic lambda needs p >= h = " + std::to_string(rs_->coxeter_number()));
            return group_->auto_lambda();
        }
        const Weight l = weight(o_.lambda, "--lambda");
        if (!group_->in_cminus(l)) throw UsageError("--lambda " + l.str() + " is not a regular weight of C^-");
        return l;
    }

    AffineElement element(const std::string& text, const char* what) const {
        if (text.empty()) throw UsageError(std::string(what) + " is required");
        try {
            return group_->from_word(group_->parse_word(text));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string(what) + ": " + e.what());
        }
    }

    int max_len(int fallback) const { return o_.max_len >= 0 ? o_.max_len : fallback; }

    void require_prime() const {
        if (!group_->p_is_prime()) throw RegimeError("modular characters need p prime, got p = " + std::to_string(o_.p));
    }

    LcfEngine& engine() {
        if (!engine_) {
            LcfOptions lo{o_.assume_lcf, o_.kl_eval == "one" ? KLEval::AtOne : KLEval::AtMinusOne};
            engine_ = std::make_unique<LcfEngine>(group_, lo);
            if (!cache_dir_.empty()) loaded_ = engine_->kl().load(cache_file());
        }
        return *engine_;
    }

    std::string cache_file() const {
        return (std::filesystem::path(cache_dir_) / ("kl-" + rs_->name() + ".json")).string();
    }
    const std::string& cache_dir() const { return cache_dir_; }

    /// Writes the KL table back when it grew.
    void flush_cache() {
        if (!engine_ || cache_dir_.empty() || engine_->kl().size() == loaded_) return;
        std::filesystem::create_directories(cache_dir_);
        engine_->kl().save(cache_file());
    }

    json config() const {
        json c;
        c["type"] = std::string(1, series_letter(rs_->series()));
        c["rank"] = rs_->rank();
        c["p"] = o_.p;
        json lam = nullptr;
        if (o_.lambda == "auto") {
            if (!group_->cminus_points().empty()) lam = weight_json(group_->auto_lambda());
        } else {
            lam = weight_json(weight(o_.lambda, "--lambda"));
        }
        c["lambda"] = lam;
        c["lambda_auto"] = o_.lambda == "auto";
        c["mu"] = o_.mu.empty() ? json(nullptr) : weight_json(weight(o_.mu, "--mu"));
        c["max_len"] = o_.max_len >= 0 ? json(o_.max_len) : json(nullptr);
        c["assume_lcf"] = o_.assume_lcf;
        c["kl_eval"] = o_.kl_eval == "one" ? "P(1)" : "P(-1)";
        c["output"] = o_.output;
        c["cache_path"] = cache_dir_.empty() ? json(nullptr) : json(cache_dir_);
        return c;
    }

    const std::string& command() const { return command_; }

private:
    Options o_;
    std::string command_;
    std::shared_ptr<const RootSystem> rs_;
    std::shared_ptr<const AffineWeylGroup> group_;
    std::unique_ptr<LcfEngine> engine_;
    std::string cache_dir_;
    std::size_t loaded_ = 0;
};

json char_both(const CharRing& ring, const CharElem& c) {
    const auto weyl = ring.in_weyl_basis(c);
    json j;
    j["weyl"] = char_json(weyl);
    j["weight"] = char_json(ring.to_weight_basis(weyl));
    j["dim"] = ring.dim(weyl);
    j["text"] = weyl.str();
    return j;
}

void char_rows(Result& r, const CharRing& ring, const CharElem& c, const std::string& label) {
    r.columns = {"label", "basis", "weight", "coeff"};
    const auto weyl = ring.in_weyl_basis(c);
    for (const auto& [v, k] : weyl.terms) r.rows.push_back({label, "weyl", coords(v), std::to_string(k)});
    for (const auto& [v, k] : ring.to_weight_basis(weyl).terms) r.rows.push_back({label, "weight", coords(v), std::to_string(k)});
    r.plain.push_back(label + " = " + weyl.str() + "   (dim " + std::to_string(ring.dim(weyl)) + ")");
}

Result cmd_roots(Session& s) {
    const auto& rs = s.rs();
    Result r;
    json j;
    j["name"] = rs.name();
    j["coxeter_number"] = rs.coxeter_number();
    json cartan = json::array();
    for (int i = 0; i < rs.rank(); ++i) {
        json row = json::array();
        for (int k = 0; k < rs.rank(); ++k) row.push_back(rs.cartan()(i, k));
        cartan.push_back(row);
    }
    j["cartan"] = cartan;
    j["rho"] = weight_json(rs.rho());
    j["highest_coroot_root"] = rs.highest_coroot_index();
    json roots = json::array();
    r.columns = {"index", "weight", "root_coords", "height"};
    for (int b = 0; b < rs.num_positive_roots(); ++b) {
        const Weight& v = rs.positive_roots()[b].root;
        const auto rc = *rs.root_coordinates(v);
        int h = 0;
        for (int x : rc) h += x;
        roots.push_back({{"index", b}, {"weight", weight_json(v)}, {"root_coords", rc}, {"height", h}});
        std::string rcs;
        for (std::size_t i = 0; i < rc.size(); ++i) rcs += (i ? "," : "") + std::to_string(rc[i]);
        r.rows.push_back({std::to_string(b), coords(v), rcs, std::to_string(h)});
    }
    j["positive_roots"] = roots;
    r.value = j;
    r.plain.push_back(rs.name() + ": h = " + std::to_string(rs.coxeter_number()) + ", " +
                      std::to_string(rs.num_positive_roots()) + " positive roots");
    for (const auto& row : r.rows) r.plain.push_back("  beta" + row[0] + " = (" + row[1] + ")  roots (" + row[2] + ")  height " + row[3]);
    return r;
}

Result cmd_elements(Session& s) {
    const auto& g = s.g();
    const int len = s.max_len(3);
    Result r;
    std::vector<AffineElement> elems;
    std::optional<Weight> lam;
    if (s.opts().wplus) {
        lam = s.lambda();
        elems = g.enumerate_wplus(*lam, len);
    } else {
        elems = g.elements_up_to(len);
    }
    json arr = json::array();
    r.columns = {"word", "length", "alcove", "right_descent", "dot_lambda"};
    for (const auto& w : elems) {
        json e = element_json(g, w);
        e["length"] = w.length();
        e["right_descent"] = generator_set_json(g, g.right_descent(w));
        std::string alc;
        for (std::size_t i = 0; i < w.alcove().size(); ++i) alc += (i ? "," : "") + std::to_string(w.alcove()[i]);
        std::string dl;
        if (lam) {
            const Weight v = g.dot(w, *lam);
            e["dot_lambda"] = weight_json(v);
            dl = coords(v);
        }
        arr.push_back(e);
        r.rows.push_back({word_of(g, w), std::to_string(w.length()), alc, generator_set_string(g, g.right_descent(w)), dl});
        r.plain.push_back(word_of(g, w) + "  l=" + std::to_string(w.length()) + "  alcove (" + alc + ")  R=" +
                          generator_set_string(g, g.right_descent(w)) + (lam ? "  w.lambda=(" + dl + ")" : ""));
    }
    r.value = {{"count", elems.size()}, {"elements", arr}};
    return r;
}

Result cmd_descent(Session& s) {
    const auto& g = s.g();
    const auto w = s.element(s.opts().word, "--word");
    Result r;
    const auto rd = g.right_descent(w);
    r.value = {{"element", element_json(g, w)}, {"length", w.length()}, {"right_descent", generator_set_json(g, rd)}};
    r.columns = {"word", "length", "right_descent"};
    r.rows.push_back({word_of(g, w), std::to_string(w.length()), generator_set_string(g, rd)});
    r.plain.push_back(generator_set_string(g, rd));
    return r;
}

Result cmd_kl(Session& s) {
    const auto& g = s.g();
    const auto y = s.element(s.opts().y, "--y");
    const auto w = s.element(s.opts().w, "--w");
    auto& kl = s.engine().kl();
    const auto P = kl.kl_poly(y, w);
    const auto R = kl.r_poly(y, w);
    Result r;
    r.value = {{"y", element_json(g, y)},
               {"w", element_json(g, w)},
               {"bruhat_leq", g.bruhat_leq(y, w)},
               {"coeffs", P.coeffs()},
               {"poly", P.str()},
               {"mu", kl.mu(y, w)},
               {"r_coeffs", R.coeffs()},
               {"r_poly", R.str()}};
    r.columns = {"poly", "degree", "coeff"};
    for (std::size_t i = 0; i < P.coeffs().size(); ++i) r.rows.push_back({"P", std::to_string(i), std::to_string(P.coeffs()[i])});
    for (std::size_t i = 0; i < R.coeffs().size(); ++i) r.rows.push_back({"R", std::to_string(i), std::to_string(R.coeffs()[i])});
    std::string line;
    for (auto c : P.coeffs()) line += (line.empty() ? "" : " ") + std::to_string(c);
    r.plain.push_back(line.empty() ? "0" : line);
    return r;
}

Result cmd_char(Session& s) {
    const auto& o = s.opts();
    auto& e = s.engine();
    const auto& ring = e.ring();
    Result r;
    CharElem c;
    std::string label;
    if (!o.chi.empty()) {
        const Weight v = s.weight(o.chi, "--chi");
        c = ring.chi(v);
        label = "chi(" + coords(v) + ")";
        if (!o.times.empty()) {
            const Weight t = s.weight(o.times, "--times");
            c = ring.product(c, ring.chi(t));
            label += " * chi(" + coords(t) + ")";
        }
    } else if (!o.weight.empty()) {
        const Weight v = s.weight(o.weight, "--weight");
        if (!v.is_dominant()) throw UsageError("--weight " + v.str() + " is not dominant");
        if (o.kind == "weyl") {
            c = ring.chi(v);
            label = "chi(" + coords(v) + ")";
        } else if (o.kind == "quantum") {
            c = e.delta0_char(v);
            label = "L_zeta(" + coords(v) + ")";
        } else if (o.kind == "steinberg") {
            c = e.quantum_steinberg_char(v);
            label = "L_zeta(" + coords(v) + ") by Steinberg";
        } else if (o.kind == "modular") {
            s.require_prime();
            c = e.modular_irred_char(v);
            label = "L(" + coords(v) + ")";
        } else {
            throw UsageError("--kind must be weyl, quantum, steinberg or modular");
        }
    } else {
        throw UsageError("char needs --chi or --weight");
    }
    r.value = char_both(ring, c);
    r.value["label"] = label;
    char_rows(r, ring, c, label);
    return r;
}

Result cmd_translate(Session& s) {
    const auto& o = s.opts();
    const auto& g = s.g();
    auto& e = s.engine();
    const auto& ring = e.ring();
    const Weight lam = o.lambda == "auto" ? s.lambda() : s.weight(o.lambda, "--lambda");
    if (o.mu.empty()) throw UsageError("translate needs --mu");
    const Weight mu = s.weight(o.mu, "--mu");
    if (!g.in_cminus_closure(lam)) throw UsageError("--lambda " + lam.str() + " is not in the closure of C^-");
    if (!g.in_cminus_closure(mu)) throw UsageError("--mu " + mu.str() + " is not in the closure of C^-");
    CharElem input;
    std::string label;
    if (!o.chi.empty()) {
        const Weight v = s.weight(o.chi, "--chi");
        input = ring.chi(v);
        label = "chi(" + coords(v) + ")";
    } else if (!o.word.empty()) {
        const auto w = s.element(o.word, "--word");
        if (!g.in_cminus(lam)) throw UsageError("--word needs a regular --lambda");
        if (!g.in_wplus(w)) throw UsageError("--word " + word_of(g, w) + " is not in W+");
        input = e.quantum_irred_char(w, lam);
        label = "L_zeta(" + coords(g.dot(w, lam)) + ")";
    } else {
        throw UsageError("translate needs --chi or --word");
    }
    const auto t = translate(ring, g, lam, mu, input);
    Result r;
    r.value = {{"lambda", weight_json(lam)}, {"mu", weight_json(mu)}, {"input", char_both(ring, input)},
               {"value", char_both(ring, t.value)}, {"dropped", char_json(t.dropped)}};
    r.columns = {"part", "weight", "coeff"};
    for (const auto& [v, k] : input.terms) r.rows.push_back({"input", coords(v), std::to_string(k)});
    for (const auto& [v, k] : t.value.terms) r.rows.push_back({"value", coords(v), std::to_string(k)});
    for (const auto& [v, k] : t.dropped.terms) r.rows.push_back({"dropped", coords(v), std::to_string(k)});
    r.plain.push_back("T_" + coords(lam) + "^" + coords(mu) + " " + label + " = " + t.value.str());
    if (!t.dropped.is_zero()) r.plain.push_back("dropped (outside the orbit of lambda): " + t.dropped.str());
    return r;
}

Result cmd_decompose(Session& s) {
    const auto& o = s.opts();
    const auto& g = s.g();
    auto& e = s.engine();
    if (!o.assume_lcf) throw RegimeError("decompose relies on Lusztig's character formula; pass --assume-lcf");
    s.require_prime();
    Weight gamma(g.rank());
    if (!o.weight.empty()) {
        gamma = s.weight(o.weight, "--weight");
    } else if (!o.word.empty()) {
        gamma = g.dot(s.element(o.word, "--word"), s.lambda());
    } else {
        throw UsageError("decompose needs --weight or --word");
    }
    if (!gamma.is_dominant()) throw UsageError("weight " + gamma.str() + " is not dominant");
    const auto lc = g.linkage_class(gamma);
    Result r;
    json coeffs = json::object();
    json terms = json::array();
    r.columns = {"gamma", "coeff", "x", "R_x"};
    r.value["weight"] = weight_json(gamma);
    r.value["orbit_rep"] = weight_json(lc.mu);
    r.value["w"] = element_json(g, lc.w);
    if (g.in_cminus(lc.mu)) {
        const auto rep = e.decompose_c(lc.w, lc.mu);
        for (const auto& t : rep.coefficients) {
            coeffs[coords(t.gamma)] = t.coeff;
            const auto rx = g.right_descent(t.x);
            terms.push_back({{"gamma", weight_json(t.gamma)}, {"coeff", t.coeff}, {"x", element_json(g, t.x)},
                             {"R(x)", generator_set_json(g, rx)}});
            r.rows.push_back({coords(t.gamma), std::to_string(t.coeff), word_of(g, t.x), generator_set_string(g, rx)});
        }
        r.value["R(w)"] = generator_set_json(g, g.right_descent(lc.w));
        r.value["descent_ok"] = rep.descent_ok;
        r.value["regime_ok"] = rep.regime_ok;
        r.value["witnesses"] = rep.witnesses;
        if (!rep.regime_ok) r.exit_code = kExitUsage;
    } else {
        // singular orbit: no descent bookkeeping
        const auto c = e.modular_decompose(e.delta0_char(gamma));
        bool regime_ok = true;
        std::vector<std::pair<Weight, std::int64_t>> sorted(c.begin(), c.end());
        std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
            const auto ha = s.rs().scaled_height(a.first), hb = s.rs().scaled_height(b.first);
            return ha != hb ? ha > hb : b.first < a.first;
        });
        for (const auto& [v, k] : sorted) {
            coeffs[coords(v)] = k;
            terms.push_back({{"gamma", weight_json(v)}, {"coeff", k}});
            r.rows.push_back({coords(v), std::to_string(k), "", ""});
            regime_ok = regime_ok && k >= 0;
        }
        r.value["regime_ok"] = regime_ok;
        if (!regime_ok) r.exit_code = kExitUsage;
    }
    r.value["coefficients"] = coeffs;
    r.value["terms"] = terms;
    r.plain.push_back(coeffs.dump());
    return r;
}

/// Merges sub-run reports into one, tagging entries and rows with the run label.
struct SuiteRun {
    CheckReport total;
    std::vector<std::string> columns;
    bool first = true;

    void add(const std::string& label, CheckReport part) {
        total.checked += part.checked;
        total.skipped += part.skipped;
        auto tag = [&](json& arr, json& into) {
            for (auto& v : arr) {
                json t;
                t["run"] = label;
                for (auto& [k, x] : v.items()) t[k] = x;
                into.push_back(std::move(t));
            }
        };
        tag(part.violations, total.violations);
        tag(part.boundary_cases, total.boundary_cases);
        tag(part.errors, total.errors);
        json cls = {{"checked", part.checked}, {"skipped", part.skipped}, {"violations", part.violations.size()},
                    {"boundary_cases", part.boundary_cases.size()}};
        if (!part.classes.empty()) cls["classes"] = part.classes;
        if (!part.notes.empty()) cls["notes"] = part.notes;
        total.classes[label] = cls;
        if (first) {
            columns = {"run"};
            columns.insert(columns.end(), part.case_columns.begin(), part.case_columns.end());
            first = false;
        }
        for (auto& row : part.cases) {
            std::vector<std::string> full{label};
            full.insert(full.end(), row.begin(), row.end());
            total.cases.push_back(std::move(full));
        }
    }
};

std::vector<Weight> walls_or_mu(Session& s) {
    if (!s.opts().mu.empty()) {
        const Weight mu = s.weight(s.opts().mu, "--mu");
        if (!s.g().in_cminus_closure(mu)) throw UsageError("--mu " + mu.str() + " is not in the closure of C^-");
        return {mu};
    }
    std::vector<Weight> out;
    for (const auto& wall : s.g().single_walls()) out.push_back(wall.mu);
    if (out.empty()) throw UsageError("no integral wall points in C^- for this p; pass --mu");
    return out;
}

Result cmd_verify(Session& s) {
    const auto& o = s.opts();
    const auto& g = s.g();
    const int jobs = std::max(1, o.jobs);
    SuiteRun run;
    const std::string& suite = o.suite;
    if (suite == "length") {
        run.add("length", check_length_law(g, s.max_len(10)));
    } else if (suite == "ordersame") {
        if (o.base != "both" && o.base != "cminus" && o.base != "cplus") throw UsageError("--base must be cminus, cplus or both");
        if (o.base != "cplus") run.add("C-", check_ordersame(o.box, OrderContext::cminus(s.group_ptr()), jobs));
        if (o.base != "cminus") run.add("C+", check_ordersame(o.box, OrderContext::cplus(s.group_ptr()), jobs));
    } else if (suite == "elem") {
        s.lambda();
        std::vector<Weight> nus;
        if (!o.nu.empty()) nus.push_back(s.weight(o.nu, "--nu"));
        else
            for (int i = 0; i < g.rank(); ++i) nus.push_back(s.rs().simple_root(i));
        for (const auto& nu : nus) {
            if (!s.rs().in_root_lattice(nu)) throw UsageError("--nu " + nu.str() + " is not in the root lattice");
            run.add("nu=" + coords(nu), translation_descent_check(g, nu, s.max_len(8)));
        }
    } else if (suite == "tr" || suite == "tothe") {
        const Weight lam = s.lambda();
        auto& e = s.engine();
        for (const auto& mu : walls_or_mu(s)) {
            const std::string label = "mu=" + coords(mu);
            run.add(label, suite == "tr" ? verify_tr(e, lam, mu, s.max_len(6), jobs) : verify_tothe(e, lam, mu, s.max_len(6), jobs));
        }
    } else if (suite == "newlinkage" || suite == "mult") {
        if (!o.assume_lcf) throw RegimeError("verify " + suite + " relies on Lusztig's character formula; pass --assume-lcf");
        s.require_prime();
        const Weight lam = s.lambda();
        auto& e = s.engine();
        run.add(suite, suite == "newlinkage" ? verify_newlinkage(e, lam, s.max_len(6), jobs) : verify_mult(e, lam, s.max_len(6), jobs));
    } else if (suite == "dims") {
        run.add("dims", verify_steinberg_dims(s.engine(), s.lambda(), s.max_len(6)));
    } else {
        throw UsageError("unknown suite '" + suite + "'; expected newlinkage, mult, tothe, tr, ordersame, elem, length or dims");
    }
    Result r;
    r.value = run.total.to_json();
    r.value["suite"] = suite;
    r.columns = run.columns;
    r.rows = run.total.cases;
    const auto& t = run.total;
    const auto passed = t.checked - static_cast<std::int64_t>(t.violations.size());
    std::ostringstream line;
    line << suite << ": checked " << t.checked << " / passed " << passed << " / violations " << t.violations.size()
         << " / skipped " << t.skipped;
    if (!t.boundary_cases.empty()) line << " / boundary " << t.boundary_cases.size();
    if (!t.errors.empty()) line << " / errors " << t.errors.size();
    r.plain.push_back(line.str());
    for (auto& [label, cls] : t.classes.items())
        r.plain.push_back("  " + label + ": checked " + cls["checked"].dump() + ", violations " + cls["violations"].dump());
    for (const auto& v : t.violations) r.plain.push_back("  violation " + v.dump());
    r.value["summary"] = line.str();
    r.exit_code = !t.errors.empty() ? kExitUsage : !t.violations.empty() ? kExitCounterexample : kExitPass;
    return r;
}

Result cmd_cache(Session& s) {
    const auto& o = s.opts();
    Result r;
    if (s.cache_dir().empty()) throw UsageError(std::string("no cache path; pass --cache or set ") + kCacheEnv);
    const std::string file = s.cache_file();
    r.value["file"] = file;
    r.columns = {"file", "entries"};
    if (o.action == "path") {
        r.plain.push_back(file);
    } else if (o.action == "info") {
        KLTable t(s.group_ptr());
        const auto n = t.load(file);
        r.value["entries"] = n;
        r.value["exists"] = std::filesystem::exists(file);
        r.plain.push_back(file + ": " + std::to_string(n) + " entries");
        r.rows.push_back({file, std::to_string(n)});
    } else if (o.action == "clear") {
        const bool removed = std::filesystem::remove(file);
        r.value["removed"] = removed;
        r.plain.push_back(removed ? "removed " + file : "nothing to remove at " + file);
    } else if (o.action == "build") {
        auto& kl = s.engine().kl();
        const int len = s.max_len(6);
        const auto elems = s.g().elements_up_to(len);
        parallel_for(elems.size(), std::max(1, o.jobs), [&](std::size_t i) {
            for (const auto& y : s.g().lower_ideal(elems[i])) kl.kl_poly(y, elems[i]);
        });
        s.flush_cache();
        r.value["entries"] = kl.size();
        r.value["max_len"] = len;
        r.plain.push_back(file + ": " + std::to_string(kl.size()) + " entries");
        r.rows.push_back({file, std::to_string(kl.size())});
    } else {
        throw UsageError("unknown cache action '" + o.action + "'; expected path, info, clear or build");
    }
    return r;
}

std::string csv_field(const std::string& f) {
    if (f.find_first_of(",\"\n") == std::string::npos) return f;
    std::string out = "\"";
    for (char c : f) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void emit(std::ostream& out, const Session& s, const Result& r) {
    const auto& fmt = s.opts().output;
    if (fmt == "json") {
        json j;
        j["tool"] = "alcove";
        j["version"] = kLibraryVersion;
        j["command"] = s.command();
        j["config"] = s.config();
        j["result"] = r.value;
        out << j.dump(2) << '\n';
        return;
    }
    const std::string header = "alcove " + std::string(kLibraryVersion) + " " + s.command();
    if (fmt == "csv") {
        out << "# " << header << '\n' << "# config " << s.config().dump() << '\n';
        for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_field(r.columns[i]);
        out << '\n';
        for (const auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
            out << '\n';
        }
        return;
    }
    out << "# " << header << '\n' << "# config " << s.config().dump() << '\n';
    for (const auto& line : r.plain) out << line << '\n';
}

}  // namespace

int run_query(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Alcove combinatorics, Kazhdan-Lusztig polynomials and characters of affine Weyl groups", "alcove"};
    app.set_version_flag("--version", std::string("alcove ") + kLibraryVersion);
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--type", o.type, "Root system series: A, B, C or G")->capture_default_str();
        sub->add_option("--rank", o.rank, "Rank (1 to 4)")->capture_default_str();
        sub->add_option("--p", o.p, "The parameter p of W_p")->capture_default_str();
        sub->add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}))->capture_default_str();
        sub->add_option("--cache", o.cache, std::string("KL cache directory (default $") + kCacheEnv + ")");
        sub->add_option("--jobs", o.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--kl-eval", o.kl_eval, "Evaluate P_{y,w} at q = 1 (one) or q = -1 (minus-one) in the character formula")
            ->check(CLI::IsMember({"one", "minus-one"}))
            ->capture_default_str();
        sub->add_flag("--assume-lcf", o.assume_lcf, "Assert that Lusztig's character formula holds for modular characters");
        sub->add_option("--max-len", o.max_len, "Length bound for enumerations and sweeps")->check(CLI::NonNegativeNumber);
        sub->add_option("--lambda", o.lambda, "Weight in C^- such as -3 or -3,-1, or auto")->capture_default_str();
        sub->add_option("--mu", o.mu, "Weight in the closure of C^-");
    };

    std::map<std::string, std::function<Result(Session&)>> handlers;
    auto sub = [&](const char* name, const char* desc, std::function<Result(Session&)> h) {
        auto* c = app.add_subcommand(name, desc);
        common(c);
        handlers[name] = std::move(h);
        return c;
    };

    sub("roots", "Positive roots and Cartan data", cmd_roots);
    sub("elements", "Elements of W_p up to a length bound", cmd_elements)
        ->add_flag("--wplus", o.wplus, "Only elements w with w.lambda dominant");
    sub("descent", "Right descent set of an element", cmd_descent)->add_option("--word", o.word, "Word such as s1,s0");
    auto* kl = sub("kl", "Kazhdan-Lusztig and R-polynomials", cmd_kl);
    kl->add_option("--y", o.y, "Word for y");
    kl->add_option("--w", o.w, "Word for w");
    auto* ch = sub("char", "Characters in the Weyl and weight bases", cmd_char);
    ch->add_option("--chi", o.chi, "chi(weight), straightened by the dot action");
    ch->add_option("--times", o.times, "Multiply by chi(weight)");
    ch->add_option("--weight", o.weight, "Dominant weight for --kind");
    ch->add_option("--kind", o.kind, "weyl, quantum, steinberg or modular")->capture_default_str();
    auto* tr = sub("translate", "Translation of a character from lambda to mu", cmd_translate);
    tr->add_option("--chi", o.chi, "Translate chi(weight)");
    tr->add_option("--word", o.word, "Translate ch L_zeta(w.lambda)");
    auto* dc = sub("decompose", "Multiplicities of modular simples in a quantum simple", cmd_decompose);
    dc->add_option("--weight", o.weight, "Dominant weight");
    dc->add_option("--word", o.word, "Word w, for the weight w.lambda");
    auto* vf = sub("verify", "Run a verification suite", cmd_verify);
    vf->add_option("suite", o.suite, "newlinkage, mult, tothe, tr, ordersame, elem, length or dims")->required();
    vf->add_option("--box", o.box, "Coordinate box radius for ordersame")->check(CLI::NonNegativeNumber)->capture_default_str();
    vf->add_option("--base", o.base, "cminus, cplus or both")->capture_default_str();
    vf->add_option("--nu", o.nu, "Translation weight for elem (default: each simple root)");
    auto* ca = sub("cache", "Inspect or fill the KL cache", cmd_cache);
    ca->add_option("action", o.action, "path, info, clear or build")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_out, o_err;
        const int code = app.exit(e, o_out, o_err);
        out << o_out.str();
        err << o_err.str();
        return code == 0 ? kExitPass : kExitUsage;
    }

    std::string name = app.get_subcommands().front()->get_name();
    try {
        Session s(o, name);
        Result r = handlers.at(name)(s);
        s.flush_cache();
        emit(out, s, r);
        return r.exit_code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const RegimeError& e) {
        err << "regime error: " << e.what() << '\n';
    } catch (const SearchBoundExceeded& e) {
        err << "search bound exceeded: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
    }
    return kExitUsage;
}

}  // namespace alcove
