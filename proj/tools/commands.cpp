#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "circlewalk/bounds.hpp"
#include "circlewalk/circles.hpp"
#include "circlewalk/errors.hpp"
#include "circlewalk/simulate.hpp"
#include "circlewalk/walk.hpp"

namespace circlewalk::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::uint32_t kAxiomGate = 31;

struct Options {
    std::int64_t p = 0;
    double eps = kDefaultEpsilon;
    std::uint64_t seed = 42;
    std::uint64_t trials = 100000;
    std::uint64_t steps = 20;
    std::string format = "csv";
    std::string output;
    unsigned jobs = 0;
    bool force = false;
    std::int64_t p_min = 7;
    std::int64_t p_max = 59;
    bool plane = false;
    std::uint64_t max_steps = 0;
};

bool json_wanted(const Options& o) { return o.format == "json"; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string rational_text(const Rational& r) { return r.get_str(); }

// --- constants -------------------------------------------------------------

std::string cmd_constants(const Options& o) {
    const auto m = make_modulus(o.p);
    if (m.value() > StructureTensor::kDenseCacheLimit && !o.force) {
        throw GateExceeded("constants export is limited to p <= " +
                           std::to_string(StructureTensor::kDenseCacheLimit) + " (use --force)");
    }
    const StructureTensor t(m, m.value() <= StructureTensor::kDenseCacheLimit);
    if (!json_wanted(o)) {
        std::ostringstream s;
        write_tensor_csv(s, t);
        return s.str();
    }
    Json rows = Json::array();
    const std::uint32_t n = t.order();
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            for (std::uint32_t k = 0; k < n; ++k) {
                const std::uint32_t den = (i != 0 && j != 0) ? n + 1 : 1;
                rows.push_back({i, j, k, t.multiplicity(i, j, k), den});
            }
    return dump(Json{{"p", n}, {"columns", {"i", "j", "k", "numerator", "denominator"}}, {"rows", rows}});
}

// --- axioms ----------------------------------------------------------------

std::string cmd_axioms(const Options& o, int& code) {
    const auto m = make_modulus(o.p);
    if (m.value() > kAxiomGate && !o.force) {
        throw GateExceeded("exhaustive axiom check is limited to p <= " + std::to_string(kAxiomGate) +
                           " (use --force)");
    }
    const auto report = validate_axioms(StructureTensor(m, true));
    if (!report.all_passed()) code = kInvariant;

    auto witness_text = [](const std::vector<std::uint32_t>& w) {
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
        return s;
    };
    if (!json_wanted(o)) {
        std::string s = "axiom,passed,witness\n";
        for (const auto* r : report.results())
            s += r->name + "," + (r->passed ? "1" : "0") + "," + witness_text(r->witness) + "\n";
        return s;
    }
    Json axioms = Json::array();
    for (const auto* r : report.results())
        axioms.push_back({{"name", r->name}, {"passed", r->passed}, {"witness", r->witness}, {"detail", r->detail}});
    return dump(Json{{"p", m.value()}, {"axioms", axioms}, {"all_passed", report.all_passed()}});
}

// --- stationary ------------------------------------------------------------

std::string cmd_stationary(const Options& o, int& code) {
    const auto m = make_modulus(o.p);
    const auto kernel = build_kernel(StructureTensor(m), 1);
    const auto pi = stationary(m);
    const bool fixed = step_exact(kernel, pi).exact_weights() == pi.exact_weights();
    const bool balanced = detailed_balance(kernel, pi).holds;
    if (!fixed || !balanced) code = kInvariant;

    const auto& w = pi.exact_weights();
    if (!json_wanted(o)) {
        std::string s = "k,numerator,denominator,value\n";
        for (std::uint32_t k = 0; k < w.size(); ++k)
            s += std::to_string(k) + "," + w[k].get_num().get_str() + "," + w[k].get_den().get_str() + "," +
                 format_double(pi[k]) + "\n";
        return s;
    }
    const auto claim = doeblin_claim_check(kernel, pi, o.force);
    if (!claim.holds) code = kInvariant;
    Json weights = Json::array();
    for (std::uint32_t k = 0; k < w.size(); ++k) weights.push_back({{"k", k}, {"exact", rational_text(w[k])}, {"value", pi[k]}});
    return dump(Json{{"p", m.value()},
                     {"weights", weights},
                     {"invariant", fixed},
                     {"detailed_balance", balanced},
                     {"four_step_claim",
                      {{"exact", claim.exact},
                       {"holds", claim.holds},
                       {"claimed_constant", rational_text(claim.claimed_constant)},
                       {"min_ratio", claim.min_ratio}}}});
}

// --- mix -------------------------------------------------------------------

std::string cmd_mix(const Options& o) {
    const auto m = make_modulus(o.p);
    const auto kernel = build_kernel(StructureTensor(m), 1);
    // The coupling bound needs eps < 1; a smaller eps only widens the budget.
    const auto coupling = coupling_bound(m, std::min(o.eps, 0.5));
    MixingOptions opt;
    opt.epsilon = o.eps;
    opt.max_steps = o.max_steps ? o.max_steps : 10 * coupling.tau_bound;
    opt.force = o.force;
    const auto report = mixing_time(kernel, stationary(m), opt);

    if (!json_wanted(o)) {
        std::string s = "t,worst_tv,worst_start\n";
        for (std::size_t t = 0; t < report.tv_curve.size(); ++t)
            s += std::to_string(t) + "," + format_double(report.tv_curve[t]) + "," +
                 std::to_string(report.curve_worst[t]) + "\n";
        return s;
    }
    return dump(Json{{"p", m.value()},
                     {"epsilon", report.epsilon},
                     {"tau", report.tau},
                     {"worst_start", report.worst_start},
                     {"coupling_tau", coupling.tau_bound},
                     {"tv_curve", report.tv_curve},
                     {"curve_worst", report.curve_worst}});
}

// --- spectrum --------------------------------------------------------------

std::string cmd_spectrum(const Options& o) {
    const auto m = make_modulus(o.p);
    const auto spec = spectrum(build_kernel(StructureTensor(m), 1), stationary(m));
    if (!json_wanted(o)) {
        std::string s = "index,eigenvalue\n";
        for (std::size_t r = 0; r < spec.eigenvalues.size(); ++r)
            s += std::to_string(r) + "," + format_double(spec.eigenvalues[r]) + "\n";
        return s;
    }
    return dump(Json{{"p", m.value()},
                     {"eigenvalues", spec.eigenvalues},
                     {"lambda1", spec.lambda1()},
                     {"lambda_min", spec.lambda_min()},
                     {"alpha_star", spec.alpha_star},
                     {"gap", spec.gap}});
}

// --- bounds ----------------------------------------------------------------

std::string cmd_bounds(const Options& o) {
    const auto m = make_modulus(o.p);
    const auto r = bound_report(m, o.eps, o.force);
    if (!json_wanted(o)) {
        std::string s =
            "p,lambda1,lambda_min,alpha_star,comparison_A,v,alpha1_upper_closed,alpha_min_lower_closed,"
            "coupling_n,coupling_tau,tau_measured\n";
        s += std::to_string(r.p) + "," + format_double(r.lambda1) + "," + format_double(r.lambda_min) + "," +
             format_double(r.alpha_star) + "," + format_double(r.comparison_A) + "," + format_double(r.v_value) +
             "," + format_double(r.closed_form.alpha1_upper) + "," + format_double(r.closed_form.alpha_min_lower) +
             "," + std::to_string(r.coupling_n) + "," + std::to_string(r.coupling_tau) + "," +
             (r.tau_measured ? std::to_string(*r.tau_measured) : "") + "\n";
        return s;
    }
    Json j{{"p", r.p},
           {"lambda1", r.lambda1},
           {"lambda_min", r.lambda_min},
           {"alpha_star", r.alpha_star},
           {"comparison_A", r.comparison_A},
           {"v", r.v_value},
           {"alpha1_upper_closed", r.closed_form.alpha1_upper},
           {"alpha_min_lower_closed", r.closed_form.alpha_min_lower},
           {"coupling_n", r.coupling_n},
           {"coupling_tau", r.coupling_tau},
           {"tau_measured", nullptr}};
    if (r.tau_measured) j["tau_measured"] = *r.tau_measured;
    return dump(j);
}

// --- simulate --------------------------------------------------------------

std::string cmd_simulate(const Options& o) {
    const auto m = make_modulus(o.p);
    SimulationOptions opt;
    opt.steps = o.steps;
    opt.trials = o.trials;
    opt.seed = o.seed;
    opt.track_plane = o.plane;
    const auto r = simulate(m, opt);
    const double trials = static_cast<double>(o.trials);

    if (!json_wanted(o)) {
        std::string s;
        if (o.plane) {
            s = "x,y,count,frequency\n";
            for (std::uint32_t x = 0; x < m.value(); ++x)
                for (std::uint32_t y = 0; y < m.value(); ++y) {
                    const auto c = r.plane_counts[std::size_t{x} * m.value() + y];
                    s += std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(c) + "," +
                         format_double(static_cast<double>(c) / trials) + "\n";
                }
            return s;
        }
        s = "k,count,frequency\n";
        for (std::uint32_t k = 0; k < m.value(); ++k)
            s += std::to_string(k) + "," + std::to_string(r.counts[k]) + "," + format_double(r.empirical[k]) + "\n";
        return s;
    }
    const auto kernel = build_kernel(StructureTensor(m), 1);
    const auto exact = iterate(kernel, Distribution::point_mass(m.value(), 0), o.steps);
    Json j{{"p", m.value()},
           {"steps", o.steps},
           {"trials", o.trials},
           {"seed", o.seed},
           {"counts", r.counts},
           {"frequency", r.empirical.values()},
           {"tv_to_exact", tv_distance(r.empirical, exact)}};
    if (o.plane) j["plane_counts"] = r.plane_counts;
    return dump(j);
}

// --- scan ------------------------------------------------------------------

std::string cmd_scan(const Options& o, std::ostream& err) {
    if (o.p_min > o.p_max) throw EmptyRange("--p-min exceeds --p-max");
    std::vector<PrimeModulus> moduli;
    for (std::int64_t n = std::max<std::int64_t>(o.p_min, 3); n <= o.p_max; ++n)
        if (n % 4 == 3 && is_prime(n)) moduli.push_back(make_modulus(n));
    if (moduli.empty()) {
        throw EmptyRange("no prime = 3 (mod 4) in [" + std::to_string(o.p_min) + ", " + std::to_string(o.p_max) + "]");
    }

    std::vector<ScanRow> rows(moduli.size());
    std::vector<std::exception_ptr> failures(moduli.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < moduli.size(); i = next++) {
            try {
                rows[i] = scan_row(moduli[i], o.eps, o.force);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs ? o.jobs : default_jobs(),
                                                           static_cast<unsigned>(moduli.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    const auto worst = std::max_element(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
        return a.tau_over_p < b.tau_over_p;
    });
    err << "max tau_over_p = " << format_double(worst->tau_over_p) << " at p = " << worst->p << "\n";

    if (!json_wanted(o)) {
        std::string s = "p,tau_measured,coupling_tau,gap,alpha_star,tau_over_p,tau_over_log_p,mixing_exact\n";
        for (const auto& r : rows)
            s += std::to_string(r.p) + "," + std::to_string(r.tau_measured) + "," + std::to_string(r.coupling_tau) +
                 "," + format_double(r.gap) + "," + format_double(r.alpha_star) + "," + format_double(r.tau_over_p) +
                 "," + format_double(r.tau_over_log_p) + "," + (r.mixing_exact ? "1" : "0") + "\n";
        return s;
    }
    Json out = Json::array();
    for (const auto& r : rows)
        out.push_back({{"p", r.p},
                       {"tau_measured", r.tau_measured},
                       {"coupling_tau", r.coupling_tau},
                       {"gap", r.gap},
                       {"alpha_star", r.alpha_star},
                       {"tau_over_p", r.tau_over_p},
                       {"tau_over_log_p", r.tau_over_log_p},
                       {"mixing_exact", r.mixing_exact}});
    return dump(out);
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
    if (o.output.empty() || o.output == "-") {
        out << text;
        return;
    }
    std::ofstream file(o.output, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open " + o.output);
    file << text;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

unsigned default_jobs() {
    if (const char* env = std::getenv("CIRCLEWALK_JOBS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t spectral_mixing_bound(double alpha_star, double pi_min, double epsilon) {
    const double scale = 0.5 / std::sqrt(pi_min);
    auto bound = [&](std::uint64_t t) { return scale * std::pow(alpha_star, static_cast<double>(t)); };
    if (bound(0) <= epsilon) return 0;
    if (alpha_star <= 0.0) return 1;
    auto t = static_cast<std::uint64_t>(std::max(1.0, std::ceil(std::log(epsilon / scale) / std::log(alpha_star))));
    while (bound(t) > epsilon) ++t;
    while (t > 1 && bound(t - 1) <= epsilon) --t;
    return t;
}

ScanRow scan_row(const PrimeModulus& m, double epsilon, bool force) {
    const auto kernel = build_kernel(StructureTensor(m), 1);
    const auto pi = stationary(m);
    const auto spec = spectrum(kernel, pi);
    const auto coupling = coupling_bound(m, epsilon);

    ScanRow row;
    row.p = m.value();
    row.gap = spec.gap;
    row.alpha_star = spec.alpha_star;
    row.coupling_tau = coupling.tau_bound;
    row.mixing_exact = m.value() <= kExactMixingLimit || force;
    if (row.mixing_exact) {
        MixingOptions opt;
        opt.epsilon = epsilon;
        opt.max_steps = 10 * coupling.tau_bound;
        opt.force = force;
        row.tau_measured = mixing_time(kernel, pi, opt).tau;
    } else {
        row.tau_measured = spectral_mixing_bound(spec.alpha_star, pi[0], epsilon);
    }
    const double p = m.value();
    row.tau_over_p = static_cast<double>(row.tau_measured) / p;
    row.tau_over_log_p = static_cast<double>(row.tau_measured) / std::log(p);
    return row;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random walks on circles of the finite plane F_p x F_p", "circlewalk"};
    app.require_subcommand(1);
    Options o;

    auto add_p = [&](CLI::App* sub) { sub->add_option("--p", o.p, "prime modulus, p = 3 (mod 4)")->required(); };
    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", o.output, "output file (default stdout)");
    };
    auto add_eps = [&](CLI::App* sub) {
        sub->add_option("--eps", o.eps, "TV threshold (default 0.1839397 = 1/(2e))");
    };
    auto add_force = [&](CLI::App* sub) { sub->add_flag("--force", o.force, "override size gates"); };

    auto* constants = app.add_subcommand("constants", "export the exact structure tensor");
    add_p(constants);
    add_io(constants);
    add_force(constants);

    auto* axioms = app.add_subcommand("axioms", "check the hypergroup axioms exhaustively");
    add_p(axioms);
    add_io(axioms);
    add_force(axioms);

    auto* stat = app.add_subcommand("stationary", "stationary law with exact checks");
    add_p(stat);
    add_io(stat);
    add_force(stat);

    auto* mix = app.add_subcommand("mix", "measure the mixing time over all starts");
    add_p(mix);
    add_io(mix);
    add_eps(mix);
    add_force(mix);
    mix->add_option("--max-steps", o.max_steps, "iteration budget (default 10x coupling bound)");

    auto* spec = app.add_subcommand("spectrum", "eigenvalues of the symmetrized kernel");
    add_p(spec);
    add_io(spec);

    auto* bounds = app.add_subcommand("bounds", "spectral, comparison, cycle and coupling bounds");
    add_p(bounds);
    add_io(bounds);
    add_eps(bounds);
    add_force(bounds);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo walk on the plane");
    add_p(sim);
    add_io(sim);
    sim->add_option("--steps", o.steps, "walk length");
    sim->add_option("--trials", o.trials, "independent walks")->check(CLI::PositiveNumber);
    sim->add_option("--seed", o.seed, "RNG seed");
    sim->add_flag("--plane", o.plane, "histogram the final plane point instead of its circle");

    auto* scan = app.add_subcommand("scan", "mixing time against p over a range of primes");
    add_io(scan);
    add_eps(scan);
    add_force(scan);
    scan->add_option("--p-min", o.p_min, "smallest p");
    scan->add_option("--p-max", o.p_max, "largest p");
    scan->add_option("--jobs", o.jobs, "worker threads (default all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    int code = kOk;
    try {
        std::string text;
        if (*constants) text = cmd_constants(o);
        else if (*axioms) text = cmd_axioms(o, code);
        else if (*stat) text = cmd_stationary(o, code);
        else if (*mix) text = cmd_mix(o);
        else if (*spec) text = cmd_spectrum(o);
        else if (*bounds) text = cmd_bounds(o);
        else if (*sim) text = cmd_simulate(o);
        else text = cmd_scan(o, err);
        emit(o, text, out);
    } catch (const InvalidModulus& e) {
        err << "error: invalid modulus: " << e.what() << "\n";
        return kBadModulus;
    } catch (const NotMixed& e) {
        err << "error: " << e.what() << "\n";
        return kNotMixed;
    } catch (const GateExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BadEpsilon& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const EmptyRange& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: invariant violated: " << e.what() << "\n";
        return kInvariant;
    }
    if (code == kInvariant) err << "error: a checked invariant failed\n";
    return code;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace circlewalk::cli
