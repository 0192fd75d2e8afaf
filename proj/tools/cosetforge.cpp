#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli_io.hpp"

namespace cf = cosetforge;
using cf::cli::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 1;
constexpr int kExitCap = 2;
constexpr int kExitInternal = 70;
constexpr int kExitUsage = 64;

struct Output {
    json body;
    std::string text;  // plain rendering for --format text
    std::string csv;   // table rendering for --format csv
    int status = kExitOk;
};

struct Globals {
    std::uint64_t seed = cf::kDefaultSeed;
    unsigned threads = 1;
    std::string format = "json";
    std::string out;
    std::uint64_t cap = cf::kDefaultCap;
    bool cap_from_env = false;
};

std::uint64_t cap_from_environment(bool& found) {
    const char* raw = std::getenv("COSETFORGE_CAP");
    found = raw != nullptr && *raw != '\0';
    if (!found) return cf::kDefaultCap;
    try {
        std::size_t used = 0;
        auto v = std::stoull(raw, &used);
        cf::detail::require(used == std::string(raw).size() && v > 0, "COSETFORGE_CAP must be a positive integer");
        return v;
    } catch (const std::logic_error&) {
        throw cf::PreconditionError("COSETFORGE_CAP must be a positive integer");
    }
}

std::string csv_real(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(12) << v;
    return os.str();
}

Output scalar(json body, std::string text) {
    Output o;
    o.body = std::move(body);
    o.text = std::move(text);
    return o;
}

cf::DistortionMode parse_mode(const std::string& s) {
    if (s == "p_group") return cf::DistortionMode::p_group;
    if (s == "no_p_subgroup") return cf::DistortionMode::no_p_subgroup;
    throw cf::PreconditionError("mode must be p_group or no_p_subgroup");
}

json representation_json(const std::optional<cf::CosetRepresentation>& rep) {
    json out{{"length", nullptr}, {"positives", json::array()}, {"negatives", json::array()}};
    if (!rep) return out;
    out["length"] = rep->length();
    for (const auto& c : rep->positives) out["positives"].push_back(cf::cli::to_json(c));
    for (const auto& c : rep->negatives) out["negatives"].push_back(cf::cli::to_json(c));
    return out;
}

json tuples_json(const std::vector<cf::SUnitTuple>& xs) {
    json out = json::array();
    for (const auto& t : xs) out.push_back(t.entries);
    return out;
}

std::string tuples_text(const std::vector<cf::SUnitTuple>& xs) {
    std::string s;
    for (const auto& t : xs) s += cf::detail::join(t.entries) + "\n";
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cosetforge: exact subgroup and coset counts, coset-ring extraction, Fourier norms and S-unit search"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "seed for randomized checks");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--format", g.format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--out", g.out, "write output to this path instead of stdout");

    std::function<Output()> action;
    auto on = [&](CLI::App* sub, std::function<Output()> fn) { sub->callback([&action, fn] { action = fn; }); };

    // count / cosets
    std::int64_t p = 2;
    std::string type_text;
    int r = 0;
    for (const char* name : {"count", "cosets"}) {
        const bool cosets = std::string(name) == "cosets";
        auto* sub = app.add_subcommand(name, cosets ? "number of cosets of subgroups of order p^r"
                                                    : "number of subgroups of order p^r");
        sub->add_option("--p", p, "prime")->required();
        sub->add_option("--type", type_text, "partition, e.g. 2,1")->required();
        sub->add_option("--r", r, "log_p of the subgroup order")->required();
        on(sub, [&, cosets] {
            auto alpha = cf::cli::parse_type(type_text);
            auto v = cosets ? cf::count_cosets(p, alpha, r) : cf::count_subgroups(p, alpha, r);
            return scalar(json{{"p", p}, {"type", alpha.parts()}, {"r", r}, {"exact", cf::to_decimal(v)}},
                          cf::to_decimal(v));
        });
    }

    // bounds
    int n_param = 1, a_param = 1;
    double slack = 2.0;
    auto* bounds = app.add_subcommand("bounds", "subgroup and coset count bounds for the rectangular type (a,..,a)");
    bounds->add_option("--p", p, "prime")->required();
    bounds->add_option("--N", n_param, "number of cyclic factors")->required();
    bounds->add_option("--a", a_param, "exponent of each factor")->required();
    bounds->add_option("--r", r, "log_p of the subgroup order")->required();
    bounds->add_option("--slack", slack, "linear slack coefficient");
    on(bounds, [&] {
        cf::detail::require(n_param >= 1 && a_param >= 1, "N and a must be positive");
        cf::detail::require(r >= 0 && r <= n_param * a_param, "r must lie in [0, N*a]");
        const cf::Partition rect(std::vector<int>(static_cast<std::size_t>(n_param), a_param));
        auto exact = cf::count_subgroups(p, rect, r);
        auto up = cf::subgroup_count_upper_bound(p, n_param, a_param, r);
        json body{{"exact", cf::to_decimal(exact)}, {"upper", up.str()}, {"lower", nullptr}};
        std::string text = "exact=" + cf::to_decimal(exact) + " upper=" + up.str();
        json constants{{"p", p}, {"N", n_param}, {"a", a_param}, {"r", r}, {"slack", slack}};
        if (a_param >= 2) {
            auto lo = cf::subgroup_count_lower_bound(p, n_param, a_param, r, std::max(r, 1));
            body["lower"] = lo.str();
            body["lower_exact_form"] = cf::cli::to_json(lo)["exact_form"];
            constants["b1"] = std::max(r, 1);
            text += " lower=" + lo.str();
            auto cb = cf::coset_count_bounds(p, n_param, a_param, r, slack);
            body["cosets"] = json{{"exact", cf::to_decimal(cf::count_cosets(p, rect, r))},
                                  {"upper", cb.upper.str()},
                                  {"lower", cb.lower.str()}};
        }
        body["constants"] = constants;
        return scalar(body, text);
    });

    // lambda
    long long big_l = 1;
    auto* lambda = app.add_subcommand("lambda", "loss exponent L + log_p L");
    lambda->add_option("--L", big_l, "number of cosets")->required();
    lambda->add_option("--p", p, "prime")->required();
    on(lambda, [&] {
        auto v = cf::lambda_constant(big_l, p);
        return scalar(json{{"L", big_l}, {"p", p}, {"lambda", v.str()}, {"ceiling", cf::lambda_ceiling(big_l, p)}},
                      v.str());
    });

    // gs-bound
    double norm_value = 1.0, d_const = 1.0;
    auto* gs = app.add_subcommand("gs-bound", "exp(exp(D * norm^4))");
    gs->add_option("--norm", norm_value, "norm of the idempotent")->required();
    gs->add_option("--D", d_const, "constant D");
    on(gs, [&] {
        auto v = cf::green_sanders_L(norm_value, d_const);
        return scalar(cf::cli::to_json(v), v.str());
    });

    // evertse-bound
    int n_terms = 2;
    double c1 = 1.0, c2 = 1.0;
    auto* ev = app.add_subcommand("evertse-bound", "C1 exp(C2 n^3 log n)");
    ev->add_option("--n", n_terms, "n")->required();
    ev->add_option("--C1", c1, "constant C1");
    ev->add_option("--C2", c2, "constant C2");
    on(ev, [&] {
        auto v = cf::evertse_bound(n_terms, c1, c2);
        return scalar(cf::cli::to_json(v), v.str());
    });

    // phi
    long long n_big = 16;
    std::string mode = "p_group";
    double c_const = 1.0;
    auto* phi = app.add_subcommand("phi", "distortion floor c (log log n)^{1/4} or c (log log log n)^{1/4}");
    phi->add_option("--n", n_big, "n")->required();
    phi->add_option("--mode", mode, "p_group or no_p_subgroup");
    phi->add_option("--c", c_const, "constant c");
    on(phi, [&] {
        auto v = cf::distortion_floor(n_big, parse_mode(mode), c_const);
        return scalar(cf::cli::to_json(v), v.str());
    });

    // represent
    std::string source, target;
    auto* rep = app.add_subcommand("represent", "whether the source class embeds in the target class");
    rep->add_option("--source", source, "factors like 2^2,3^1")->required();
    rep->add_option("--target", target, "factors like 2^3,3^5")->required();
    on(rep, [&] {
        auto s = cf::GroupClassSpec::parse(source), t = cf::GroupClassSpec::parse(target);
        bool v = cf::representable(s, t);
        return scalar(json{{"source", s.str()}, {"target", t.str()}, {"representable", v}}, v ? "true" : "false");
    });

    // extract
    std::string input;
    std::uint64_t budget = 1'000'000;
    auto* extract = app.add_subcommand("extract", "find a large coset inside a signed coset combination");
    extract->add_option("--input,--in", input, "combination JSON file")->required();
    extract->add_option("--budget", budget, "refinement search budget");
    on(extract, [&] {
        auto comb = cf::cli::combination_from_json(cf::cli::read_json_file(input));
        auto e = cf::extract_coset(comb, g.cap, budget);
        json ledger{{"K", e.k},
                    {"L", e.big_l},
                    {"lambda", e.lambda.str()},
                    {"lambda_ceiling", e.lambda_ceiling},
                    {"size", cf::to_decimal(e.coset.size())},
                    {"guaranteed_size", cf::to_decimal(cf::prime_power(comb.group.p, std::max(e.guaranteed_exponent, 0)))},
                    {"meets_guarantee", e.meets_guarantee()},
                    {"route", e.route}};
        return scalar(json{{"coset", cf::cli::to_json(e.coset)}, {"ledger", ledger}},
                      "size " + cf::to_decimal(e.coset.size()) + " route " + e.route);
    });

    // minrep
    std::string group_text, subset_text;
    int max_len = 4;
    auto* minrep = app.add_subcommand("minrep", "shortest signed coset representation of a subset");
    minrep->add_option("--group", group_text, R"(group JSON, e.g. {"p":2,"type":[1,1]})")->required();
    minrep->add_option("--subset", subset_text, "element indices, last coordinate fastest")->required();
    minrep->add_option("--max-len", max_len, "longest representation searched");
    on(minrep, [&] {
        auto grp = cf::cli::parse_group(group_text);
        const std::uint64_t cap = g.cap_from_env ? g.cap : cf::kMinRepCap;
        auto u = cf::cli::elements_from_indices(grp, subset_text, cap);
        auto found = cf::RepresentationSearch(grp, cap).find(u, max_len);
        return scalar(representation_json(found), found ? std::to_string(found->length()) : "none");
    });

    // norm
    auto* norm = app.add_subcommand("norm", "Fourier-algebra norm of a unit-coefficient character sum");
    norm->add_option("--group", group_text, "group JSON")->required();
    norm->add_option("--subset", subset_text, "dual element indices")->required();
    on(norm, [&] {
        auto grp = cf::cli::parse_group(group_text);
        auto u = cf::cli::elements_from_indices(grp, subset_text, g.cap);
        double v = cf::a_norm(cf::CoefficientVector::indicator(grp, u), g.cap);
        std::ostringstream os;
        os << std::setprecision(15) << v;
        return scalar(json{{"group", cf::cli::to_json(grp)}, {"size", u.size()}, {"norm", v}}, os.str());
    });

    // survey
    std::uint64_t max_order = 16;
    double norm_cap = 1.5;
    int survey_len = 3;
    auto* survey = app.add_subcommand("survey", "norm and shortest coset representation of every subset");
    survey->add_option("--group", group_text, "group JSON")->required();
    survey->add_option("--max-order", max_order, "largest group order accepted");
    survey->add_option("--norm-cap", norm_cap, "keep rows with norm at most this");
    survey->add_option("--max-len", survey_len, "longest representation searched");
    on(survey, [&] {
        auto grp = cf::cli::parse_group(group_text);
        auto rows = cf::idempotent_survey(grp, norm_cap, survey_len, std::min(max_order, cf::kSurveyCap));
        Output o;
        o.body = json{{"group", cf::cli::to_json(grp)}, {"norm_cap", norm_cap}, {"max_len", survey_len}};
        json arr = json::array();
        o.csv = "subset_bitmask,norm,min_coset_length,distinct_subgroups\n";
        for (const auto& row : rows) {
            json jr{{"subset_bitmask", row.mask}, {"norm", row.norm}};
            jr["min_coset_length"] = row.min_coset_length ? json(*row.min_coset_length) : json(nullptr);
            jr["distinct_subgroups"] = row.distinct_subgroups ? json(*row.distinct_subgroups) : json(nullptr);
            arr.push_back(jr);
            o.csv += std::to_string(row.mask) + "," + csv_real(row.norm) + "," +
                     (row.min_coset_length ? std::to_string(*row.min_coset_length) : "") + "," +
                     (row.distinct_subgroups ? std::to_string(*row.distinct_subgroups) : "") + "\n";
        }
        o.body["rows"] = arr;
        o.text = o.csv;
        return o;
    });

    // witness
    std::string sigma_path, witness_path;
    auto* witness = app.add_subcommand("witness", "distortion lower bound of a character injection");
    witness->add_option("--sigma", sigma_path, "injection JSON file")->required();
    witness->add_option("--witnesses", witness_path, "witness list JSON file (default: every coset indicator)");
    on(witness, [&] {
        auto sigma = cf::cli::injection_from_json(cf::cli::read_json_file(sigma_path));
        std::vector<cf::CoefficientVector> ws;
        if (witness_path.empty()) {
            ws = cf::default_witnesses(sigma.source, g.cap);
        } else {
            for (const auto& w : cf::cli::read_json_file(witness_path)) ws.push_back(cf::cli::witness_from_json(sigma.source, w));
        }
        auto rpt = cf::distortion_witness(sigma, ws, g.cap);
        std::ostringstream os;
        os << std::setprecision(15) << rpt.lower_bound;
        return scalar(json{{"witnesses", ws.size()},
                           {"source_norms", rpt.source_norms},
                           {"target_norms", rpt.target_norms},
                           {"ratios", rpt.ratios},
                           {"max_ratio", rpt.max_ratio},
                           {"max_inverse_ratio", rpt.max_inverse_ratio},
                           {"lower_bound", rpt.lower_bound}},
                      os.str());
    });

    // sunit zero / power
    std::string primes_text;
    int l_terms = 2, exp_bound = 0, big_r = 0;
    std::uint64_t sunit_budget = cf::kDefaultBudget;
    auto* sunit = app.add_subcommand("sunit", "bounded S-unit equation solutions");
    sunit->require_subcommand(1);
    auto prime_set = [&] {
        std::vector<std::int64_t> ps;
        for (auto v : cf::cli::parse_int_list(primes_text)) ps.push_back(v);
        return cf::PrimeSet(ps);
    };
    auto* zero = sunit->add_subcommand("zero", "x_1 + .. + x_l = 0");
    zero->add_option("--primes", primes_text, "the prime set M")->required();
    zero->add_option("--l", l_terms, "number of terms")->required();
    zero->add_option("--exp-bound", exp_bound, "largest exponent of each prime")->required();
    zero->add_option("--budget", sunit_budget, "largest number of candidates examined");
    on(zero, [&] {
        cf::SearchStats stats;
        auto m = prime_set();
        auto xs = cf::enumerate_zero_sums(m, l_terms, exp_bound, sunit_budget, &stats);
        json meta{{"equation", "zero"}, {"primes", m.primes()}, {"l", l_terms}, {"exp_bound", exp_bound},
                  {"count", xs.size()}, {"budget", sunit_budget}, {"budget_used", stats.candidates}};
        return scalar(json{{"metadata", meta}, {"solutions", tuples_json(xs)}}, tuples_text(xs));
    });
    std::int64_t power_p = 2;
    auto* power = sunit->add_subcommand("power", "x_1 + .. + x_l = p^R");
    power->add_option("--primes", primes_text, "the prime set M")->required();
    power->add_option("--p", power_p, "prime outside M")->required();
    power->add_option("--R", big_r, "exponent of p")->required();
    power->add_option("--l", l_terms, "number of terms")->required();
    power->add_option("--exp-bound", exp_bound, "largest exponent of each prime")->required();
    power->add_option("--budget", sunit_budget, "largest number of candidates examined");
    on(power, [&] {
        cf::SearchStats stats;
        auto m = prime_set();
        auto xs = cf::enumerate_power_sums(m, l_terms, power_p, big_r, exp_bound, sunit_budget, &stats);
        json meta{{"equation", "power"}, {"primes", m.primes()}, {"p", power_p}, {"R", big_r}, {"l", l_terms},
                  {"exp_bound", exp_bound}, {"count", xs.size()}, {"budget", sunit_budget},
                  {"budget_used", stats.candidates}};
        return scalar(json{{"metadata", meta}, {"solutions", tuples_json(xs)}}, tuples_text(xs));
    });

    // verify
    int trials = 500, max_exponent = 10;
    auto* verify = app.add_subcommand("verify", "run the formula-versus-oracle grid and print a pass/fail ledger");
    verify->add_option("--trials", trials, "random extraction trials")->check(CLI::Range(1, 1'000'000));
    verify->add_option("--max-exponent", max_exponent, "grid covers orders up to 2^this")->check(CLI::Range(0, 10));
    verify->add_option("--slack", slack, "linear slack coefficient of the coset bounds");
    on(verify, [&] {
        cf::RunConfig cfg;
        cfg.seed = g.seed;
        cfg.threads = g.threads;
        cfg.cap = g.cap;
        cfg.extraction_trials = trials;
        cfg.max_exponent_p2 = max_exponent;
        cfg.constants["slack"] = slack;
        auto report = cf::run_verification(cfg);
        json crit = json::array();
        for (const auto& c : report.criteria)
            crit.push_back(json{{"id", c.id}, {"title", c.title}, {"pass", c.passed}, {"detail", c.detail}});
        Output o;
        o.body = json{{"seed", cfg.seed}, {"criteria", crit}, {"pass", report.passed()}};
        o.text = report.text();
        o.status = report.passed() ? kExitOk : kExitPrecondition;
        return o;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    Output result;
    try {
        g.cap = cap_from_environment(g.cap_from_env);
        result = action();
    } catch (const cf::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kExitCap;
    } catch (const cf::InternalFailure& e) {
        std::cerr << "internal failure: " << e.what() << '\n';
        return kExitInternal;
    } catch (const cf::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrecondition;
    }

    if (!app.count("--format") && g.out.size() > 4 && g.out.compare(g.out.size() - 4, 4, ".csv") == 0 && !result.csv.empty())
        g.format = "csv";
    std::string text;
    if (g.format == "json") {
        text = result.body.dump(2) + "\n";
    } else if (g.format == "csv") {
        text = !result.csv.empty() ? result.csv : result.text + "\n";
    } else {
        text = result.text;
        if (text.empty() || text.back() != '\n') text += '\n';
    }
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f || !(f << text)) {
            std::cerr << "error: cannot write '" << g.out << "'\n";
            return kExitPrecondition;
        }
    }
    return result.status;
}
