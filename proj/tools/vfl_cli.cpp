// vfl: configuration-driven experiment runner for the Volterra field laboratory.
//
// Subcommands: resolvent, subordinate, yosida, simulate, regularity,
// limit-measure, admissible, holder, verify. Options may come from a JSON
// config file ("schema": "vfl/1"); command-line flags override config keys.
// Exit codes: 0 success, 1 config error, 2 computation error, 3 verification
// suite failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vfl/approximation.hpp"
#include "vfl/errors.hpp"
#include "vfl/field.hpp"
#include "vfl/fractional.hpp"
#include "vfl/io.hpp"
#include "vfl/kernel.hpp"
#include "vfl/regularity.hpp"
#include "vfl/resolvent.hpp"
#include "vfl/spectral.hpp"
#include "vfl/verification.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Ctx {
    json cfg;           // flat config object (already schema-checked)
    fs::path out = "."; // output directory
    unsigned threads = 1;
    std::uint64_t seed = 42;
    json manifest;      // resolved values, echoed per subcommand
};

// pulls a value with priority: explicit flag > config key > built-in default
template <typename T>
T resolved(Ctx& ctx, const CLI::Option* opt, const char* key, T flag_value) {
    T v = flag_value;
    if ((opt == nullptr || opt->count() == 0) && ctx.cfg.contains(key))
        v = ctx.cfg.at(key).get<T>();
    ctx.manifest[key] = v;
    return v;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw vfl::ConfigError("empty numeric list: " + csv);
    return out;
}

vfl::Kernel make_kernel(Ctx& ctx, const std::string& name) {
    if (name == "constant") return vfl::Kernel::constant();
    if (name == "linear") return vfl::Kernel::linear();
    if (name == "exp" || name == "exponential") return vfl::Kernel::exponential();
    if (name == "linexp") return vfl::Kernel::lin_exp();
    if (name.rfind("power:", 0) == 0) return vfl::Kernel::power(std::stod(name.substr(6)));
    if (name == "tabulated") {
        if (!ctx.cfg.contains("tabulated_t") || !ctx.cfg.contains("tabulated_v"))
            throw vfl::ConfigError("tabulated kernel needs config arrays tabulated_t/tabulated_v");
        return vfl::Kernel::tabulated(ctx.cfg.at("tabulated_t").get<std::vector<double>>(),
                                      ctx.cfg.at("tabulated_v").get<std::vector<double>>());
    }
    throw vfl::ConfigError("unknown kernel: " + name);
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw vfl::ConfigError("cannot write " + p.string());
    os << text;
}

void finish_manifest(Ctx& ctx, const std::string& subcommand) {
    json m;
    m["schema"] = "vfl/1";
    m["subcommand"] = subcommand;
    m["seed"] = ctx.seed;
    m["options"] = ctx.manifest;
    write_text(ctx.out / (subcommand + "_manifest.json"), m.dump(2) + "\n");
}

void check_config(const json& cfg, const std::set<std::string>& known) {
    for (const auto& [key, value] : cfg.items()) {
        (void)value;
        if (key == "schema") continue;
        if (!known.count(key)) throw vfl::ConfigError("unknown config key: " + key);
    }
}

// ---------------------------------------------------------------- resolvent

int cmd_resolvent(Ctx& ctx, CLI::App* sub) {
    auto* k_opt = sub->get_option("--kernel");
    auto* q_opt = sub->get_option("--quantity");
    auto* c_opt = sub->get_option("--convention");
    auto* mu_opt = sub->get_option("--mu");
    auto* tmax_opt = sub->get_option("--tmax");
    auto* h_opt = sub->get_option("--step");
    auto* tol_opt = sub->get_option("--tol");
    check_config(ctx.cfg, {"kernel", "quantity", "convention", "mu", "tmax", "h", "tol",
                           "tabulated_t", "tabulated_v", "out", "threads", "seed"});

    const std::string kname = resolved<std::string>(ctx, k_opt, "kernel", k_opt->as<std::string>());
    const std::string quantity = resolved<std::string>(ctx, q_opt, "quantity", q_opt->as<std::string>());
    const std::string conv_s = resolved<std::string>(ctx, c_opt, "convention", c_opt->as<std::string>());
    const std::string mu_s = resolved<std::string>(ctx, mu_opt, "mu", mu_opt->as<std::string>());
    const double tmax = resolved<double>(ctx, tmax_opt, "tmax", tmax_opt->as<double>());
    const double h = resolved<double>(ctx, h_opt, "h", h_opt->as<double>());
    const double tol = resolved<double>(ctx, tol_opt, "tol", tol_opt->as<double>());

    const vfl::Kernel kern = make_kernel(ctx, kname);
    const vfl::TimeGrid grid(tmax, h);
    const std::vector<double> mus = parse_list(mu_s);
    const vfl::RConvention conv = conv_s == "ch1_minus" ? vfl::RConvention::ch1_minus
                                                        : vfl::RConvention::ch4_plus;
    vfl::ResolventGrid res = quantity == "s"
                                 ? vfl::solve_s(kern, mus, grid, tol, ctx.threads)
                                 : vfl::solve_r(kern, mus, grid, tol, conv, ctx.threads);

    std::ofstream csv(ctx.out / "resolvent.csv", std::ios::binary);
    vfl::write_resolvent_csv(res, csv);

    std::vector<double> ts = res.grid.nodes();
    std::vector<std::string> labels;
    for (double mu : mus) labels.push_back(quantity + ", mu=" + std::to_string(mu));
    std::ofstream svg(ctx.out / "resolvent.svg", std::ios::binary);
    vfl::write_svg_lines(svg, kname + " kernel: " + quantity + "(t; mu)", ts, res.values, labels);

    finish_manifest(ctx, "resolvent");
    return 0;
}

// -------------------------------------------------------------- subordinate

int cmd_subordinate(Ctx& ctx, CLI::App* sub) {
    auto* a_opt = sub->get_option("--alpha");
    auto* b_opt = sub->get_option("--beta");
    auto* mu_opt = sub->get_option("--mu");
    auto* t_opt = sub->get_option("--t");
    check_config(ctx.cfg, {"alpha", "beta", "mu", "t", "out", "threads", "seed"});

    const double alpha = resolved<double>(ctx, a_opt, "alpha", a_opt->as<double>());
    const double beta = resolved<double>(ctx, b_opt, "beta", b_opt->as<double>());
    const std::vector<double> mus = parse_list(resolved<std::string>(ctx, mu_opt, "mu", mu_opt->as<std::string>()));
    const std::vector<double> ts = parse_list(resolved<std::string>(ctx, t_opt, "t", t_opt->as<std::string>()));

    json rows = json::array();
    double worst = 0.0;
    for (double mu : mus)
        for (double t : ts) {
            const double r = vfl::subordination_check(alpha, beta, mu, t);
            worst = std::max(worst, r);
            rows.push_back({{"mu", mu}, {"t", t}, {"residual", r}});
        }
    json j;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["gamma"] = alpha / beta;
    j["residuals"] = rows;
    j["max_residual"] = worst;
    write_text(ctx.out / "subordination.json", j.dump(2) + "\n");
    finish_manifest(ctx, "subordinate");
    return 0;
}

// -------------------------------------------------------------------- yosida

int cmd_yosida(Ctx& ctx, CLI::App* sub) {
    auto* k_opt = sub->get_option("--kernel");
    auto* g_opt = sub->get_option("--gamma");
    auto* n_opt = sub->get_option("--n");
    auto* tmax_opt = sub->get_option("--tmax");
    auto* h_opt = sub->get_option("--step");
    auto* tol_opt = sub->get_option("--tol");
    check_config(ctx.cfg, {"kernel", "gamma", "n", "tmax", "h", "tol", "tabulated_t",
                           "tabulated_v", "out", "threads", "seed"});

    const vfl::Kernel kern = make_kernel(ctx, resolved<std::string>(ctx, k_opt, "kernel", k_opt->as<std::string>()));
    const double gamma = resolved<double>(ctx, g_opt, "gamma", g_opt->as<double>());
    std::vector<long long> ns;
    for (double v : parse_list(resolved<std::string>(ctx, n_opt, "n", n_opt->as<std::string>())))
        ns.push_back(static_cast<long long>(v));
    const double tmax = resolved<double>(ctx, tmax_opt, "tmax", tmax_opt->as<double>());
    const double h = resolved<double>(ctx, h_opt, "h", h_opt->as<double>());
    const double tol = resolved<double>(ctx, tol_opt, "tol", tol_opt->as<double>());

    const vfl::YosidaSweep sweep =
        vfl::yosida_convergence_table(kern, gamma, ns, vfl::TimeGrid(tmax, h), tol, ctx.threads);
    std::ofstream csv(ctx.out / "yosida.csv", std::ios::binary);
    vfl::write_yosida_csv(sweep, csv);
    write_text(ctx.out / "yosida.json", vfl::yosida_summary_json(sweep) + "\n");

    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < sweep.n_list.size(); ++j) {
        lx.push_back(std::log2(static_cast<double>(sweep.n_list[j])));
        ly.push_back(std::log10(std::max(sweep.sup_distances[j], 1e-300)));
    }
    std::ofstream svg(ctx.out / "yosida.svg", std::ios::binary);
    vfl::write_svg_lines(svg, "Yosida sweep: log10 sup-distance vs log2 n", lx, {ly},
                         {"sup distance"});
    finish_manifest(ctx, "yosida");
    return 0;
}

// ------------------------------------------------------------------ simulate

int cmd_simulate(Ctx& ctx, CLI::App* sub) {
    auto* k_opt = sub->get_option("--kernel");
    auto* d_opt = sub->get_option("--d");
    auto* q_opt = sub->get_option("--q");
    auto* n_opt = sub->get_option("--N");
    auto* as_opt = sub->get_option("--alpha-s");
    auto* tmax_opt = sub->get_option("--tmax");
    auto* h_opt = sub->get_option("--step");
    auto* r_opt = sub->get_option("--regime");
    auto* bin_opt = sub->get_option("--binary");
    check_config(ctx.cfg, {"kernel", "d", "q", "N", "alpha_s", "tmax", "h", "regime",
                           "binary", "tabulated_t", "tabulated_v", "out", "threads", "seed"});

    const vfl::Kernel kern = make_kernel(ctx, resolved<std::string>(ctx, k_opt, "kernel", k_opt->as<std::string>()));
    const std::size_t d = resolved<std::size_t>(ctx, d_opt, "d", d_opt->as<std::size_t>());
    const double q = resolved<double>(ctx, q_opt, "q", q_opt->as<double>());
    const int N = resolved<int>(ctx, n_opt, "N", n_opt->as<int>());
    const double alpha_s = resolved<double>(ctx, as_opt, "alpha_s", as_opt->as<double>());
    const double tmax = resolved<double>(ctx, tmax_opt, "tmax", tmax_opt->as<double>());
    const double h = resolved<double>(ctx, h_opt, "h", h_opt->as<double>());
    const std::string regime_s = resolved<std::string>(ctx, r_opt, "regime", r_opt->as<std::string>());
    const bool binary = resolved<bool>(ctx, bin_opt, "binary", bin_opt->as<bool>());

    const vfl::Regime regime = regime_s == "stationary" ? vfl::Regime::stationary
                                                        : vfl::Regime::zero_initial;
    const auto cov = vfl::torus_coefficients(vfl::SpectralSpec::torus_decay(d, q), N);
    const auto sym = vfl::Symbol::fractional_power(d, alpha_s);
    const vfl::FieldPath path = vfl::simulate_path(cov, kern, sym, vfl::TimeGrid(tmax, h),
                                                   {ctx.seed}, regime, ctx.threads);
    if (binary) {
        std::ofstream os(ctx.out / "field.bin", std::ios::binary);
        vfl::write_field_binary(path, os);
    } else {
        std::ofstream os(ctx.out / "field.csv", std::ios::binary);
        vfl::write_field_csv(path, os);
    }
    finish_manifest(ctx, "simulate");
    return 0;
}

// ---------------------------------------------------------------- regularity

int cmd_regularity(Ctx& ctx, CLI::App* sub, const std::string& mode) {
    auto* k_opt = sub->get_option("--kernel");
    auto* d_opt = sub->get_option("--d");
    auto* b_opt = sub->get_option("--beta");
    auto* as_opt = sub->get_option("--alpha-s");
    auto* t_opt = sub->get_option("--t");
    auto* e_opt = sub->get_option("--eps");
    auto* del_opt = sub->get_option("--delta");
    auto* q_opt = sub->get_option("--q");
    auto* a_opt = sub->get_option("--alpha");
    check_config(ctx.cfg, {"kernel", "d", "beta", "alpha_s", "t", "eps", "delta", "q",
                           "alpha", "tabulated_t", "tabulated_v", "out", "threads", "seed"});

    const std::string kname = resolved<std::string>(ctx, k_opt, "kernel", k_opt->as<std::string>());
    const std::size_t d = resolved<std::size_t>(ctx, d_opt, "d", d_opt->as<std::size_t>());
    const double beta = resolved<double>(ctx, b_opt, "beta", b_opt->as<double>());
    const double alpha_s = resolved<double>(ctx, as_opt, "alpha_s", as_opt->as<double>());
    const double t = resolved<double>(ctx, t_opt, "t", t_opt->as<double>());
    const double eps = resolved<double>(ctx, e_opt, "eps", e_opt->as<double>());
    const double delta = resolved<double>(ctx, del_opt, "delta", del_opt->as<double>());
    const double q = resolved<double>(ctx, q_opt, "q", q_opt->as<double>());
    const double alpha = resolved<double>(ctx, a_opt, "alpha", a_opt->as<double>());
    ctx.manifest["mode"] = mode;

    vfl::RegularityReport rep;
    const std::string desc = mode + " " + kname + " d=" + std::to_string(d) +
                             " beta=" + std::to_string(beta) + " alpha_s=" + std::to_string(alpha_s);
    if (mode == "function-valued" || mode == "case3" || mode == "case1") {
        const auto spec = mode == "case1" ? vfl::SpectralSpec::finite_mass(d, 1.0)
                                          : vfl::SpectralSpec::radial_power(d, beta);
        rep = vfl::function_valued_check(spec, vfl::Symbol::fractional_power(d, alpha_s),
                                         make_kernel(ctx, kname), t);
    } else if (mode == "continuity") {
        rep = vfl::continuity_check(vfl::SpectralSpec::radial_power(d, beta),
                                    vfl::Symbol::fractional_power(d, alpha_s),
                                    make_kernel(ctx, kname), t, eps);
    } else if (mode == "gamma-domain") {
        rep = vfl::gamma_domain_check(vfl::SpectralSpec::radial_power(d, beta), alpha_s, delta);
    } else if (mode == "sobolev") {
        rep = vfl::sobolev_check(d, q, alpha);
    } else {
        throw vfl::ConfigError("unknown regularity mode: " + mode);
    }
    write_text(ctx.out / ("regularity_" + rep.criterion + ".json"),
               vfl::regularity_json(rep, desc) + "\n");
    std::cout << rep.criterion << ": " << vfl::to_string(rep.verdict) << "\n";
    finish_manifest(ctx, "regularity");
    return 0;
}

// -------------------------------------------------------------- limit-measure

int cmd_limit_measure(Ctx& ctx, CLI::App* sub) {
    auto* k_opt = sub->get_option("--kernel");
    auto* d_opt = sub->get_option("--d");
    auto* b_opt = sub->get_option("--beta");
    auto* as_opt = sub->get_option("--alpha-s");
    auto* km_opt = sub->get_option("--kmax");
    check_config(ctx.cfg, {"kernel", "d", "beta", "alpha_s", "kmax", "tabulated_t",
                           "tabulated_v", "out", "threads", "seed"});

    const std::string kname = resolved<std::string>(ctx, k_opt, "kernel", k_opt->as<std::string>());
    const std::size_t d = resolved<std::size_t>(ctx, d_opt, "d", d_opt->as<std::size_t>());
    const double beta = resolved<double>(ctx, b_opt, "beta", b_opt->as<double>());
    const double alpha_s = resolved<double>(ctx, as_opt, "alpha_s", as_opt->as<double>());
    const int kmax = resolved<int>(ctx, km_opt, "kmax", km_opt->as<int>());

    const auto rep = vfl::limit_measure(vfl::SpectralSpec::radial_power(d, beta),
                                        vfl::Symbol::fractional_power(d, alpha_s),
                                        make_kernel(ctx, kname), kmax);
    write_text(ctx.out / "limit_measure.json",
               vfl::limit_measure_json(rep, kname + " d=" + std::to_string(d)) + "\n");
    std::cout << "limit_measure: " << vfl::to_string(rep.verdict) << "\n";
    finish_manifest(ctx, "limit-measure");
    return 0;
}

// ---------------------------------------------------------------- admissible

int cmd_admissible(Ctx& ctx, CLI::App* sub) {
    auto* k_opt = sub->get_option("--kernel");
    auto* n2_opt = sub->get_option("--n2");
    check_config(ctx.cfg, {"kernel", "n2", "tabulated_t", "tabulated_v", "out", "threads", "seed"});
    const std::string kname = resolved<std::string>(ctx, k_opt, "kernel", k_opt->as<std::string>());
    const std::vector<double> n2 = parse_list(resolved<std::string>(ctx, n2_opt, "n2", n2_opt->as<std::string>()));
    const auto table = vfl::admissible_constant(make_kernel(ctx, kname), n2);
    write_text(ctx.out / "admissible.json", vfl::admissible_json(table, kname) + "\n");
    std::cout << "C_b = " << table.c_b << "\n";
    finish_manifest(ctx, "admissible");
    return 0;
}

// -------------------------------------------------------------------- holder

int cmd_holder(Ctx& ctx, CLI::App* sub) {
    auto* k_opt = sub->get_option("--kernel");
    auto* r_opt = sub->get_option("--regime");
    auto* n2_opt = sub->get_option("--n2");
    auto* steps_opt = sub->get_option("--steps");
    auto* h_opt = sub->get_option("--step");
    check_config(ctx.cfg, {"kernel", "regime", "n2", "steps", "h", "tabulated_t",
                           "tabulated_v", "out", "threads", "seed"});

    const vfl::Kernel kern = make_kernel(ctx, resolved<std::string>(ctx, k_opt, "kernel", k_opt->as<std::string>()));
    const std::string regime_s = resolved<std::string>(ctx, r_opt, "regime", r_opt->as<std::string>());
    const double n2 = resolved<double>(ctx, n2_opt, "n2", n2_opt->as<double>());
    const std::size_t steps = resolved<std::size_t>(ctx, steps_opt, "steps", steps_opt->as<std::size_t>());
    const double h = resolved<double>(ctx, h_opt, "h", h_opt->as<double>());

    const vfl::Regime regime = regime_s == "stationary" ? vfl::Regime::stationary
                                                        : vfl::Regime::zero_initial;
    // single-mode field: n = (round(sqrt(n2)), 0, ...) on the 1-d torus
    const int n1 = std::max(1, static_cast<int>(std::lround(std::sqrt(n2))));
    vfl::TorusCovariance cov;
    cov.d = 1;
    cov.N = n1;
    cov.gamma0 = n2 == 0.0 ? 1.0 : 0.0;
    if (n2 > 0.0) {
        cov.modes = {{n1}};
        cov.gamma = {1.0};
    }
    const auto sym = vfl::Symbol::fractional_power(1, 2.0);
    const vfl::TimeGrid grid(h * static_cast<double>(steps - 1), h);
    const auto path = vfl::simulate_path(cov, kern, sym, grid, {ctx.seed}, regime, ctx.threads);
    const auto est = vfl::holder_estimate(n2 == 0.0 ? path.x0 : path.x1[0], h);

    json j;
    j["exponent"] = est.exponent;
    j["std_error"] = est.std_error;
    j["steps"] = est.steps;
    write_text(ctx.out / "holder.json", j.dump(2) + "\n");
    std::cout << "holder exponent = " << est.exponent << " +- " << est.std_error << "\n";
    finish_manifest(ctx, "holder");
    return 0;
}

// -------------------------------------------------------------------- verify

int cmd_verify(Ctx& ctx, CLI::App* sub) {
    auto* k_opt = sub->get_option("--kernel");
    auto* d_opt = sub->get_option("--d");
    auto* q_opt = sub->get_option("--q");
    auto* n_opt = sub->get_option("--N");
    auto* reps_opt = sub->get_option("--reps");
    auto* t_opt = sub->get_option("--t");
    auto* r_opt = sub->get_option("--regime");
    check_config(ctx.cfg, {"kernel", "d", "q", "N", "reps", "t", "regime", "tabulated_t",
                           "tabulated_v", "out", "threads", "seed"});

    const vfl::Kernel kern = make_kernel(ctx, resolved<std::string>(ctx, k_opt, "kernel", k_opt->as<std::string>()));
    const std::size_t d = resolved<std::size_t>(ctx, d_opt, "d", d_opt->as<std::size_t>());
    const double q = resolved<double>(ctx, q_opt, "q", q_opt->as<double>());
    const int N = resolved<int>(ctx, n_opt, "N", n_opt->as<int>());
    const std::size_t reps = resolved<std::size_t>(ctx, reps_opt, "reps", reps_opt->as<std::size_t>());
    const double t = resolved<double>(ctx, t_opt, "t", t_opt->as<double>());
    const std::string regime_s = resolved<std::string>(ctx, r_opt, "regime", r_opt->as<std::string>());
    const vfl::Regime regime = regime_s == "stationary" ? vfl::Regime::stationary
                                                        : vfl::Regime::zero_initial;

    const auto cov = vfl::torus_coefficients(vfl::SpectralSpec::torus_decay(d, q), N);
    const auto sym = vfl::Symbol::fractional_power(d, 2.0);  // heat case v = |n|^2
    const vfl::NoiseSeed seed{ctx.seed};

    std::vector<vfl::MCResult> results;
    results.push_back(vfl::mc_mode_variance(cov, kern, sym, std::vector<int>(d, 0), t, regime,
                                            reps, seed, ctx.threads));
    results.back().label = "variance mode 0";
    for (std::size_t m = 0; m < cov.modes.size(); ++m) {
        auto r = vfl::mc_mode_variance(cov, kern, sym, cov.modes[m], t, regime, reps, seed,
                                       ctx.threads);
        r.label = "variance mode " + std::to_string(m + 1);
        results.push_back(std::move(r));
    }
    // cross-mode independence spot checks on disjoint single-mode functionals
    const std::size_t pairs = std::min<std::size_t>(4, cov.modes.size() / 2);
    for (std::size_t p = 0; p < pairs; ++p) {
        vfl::TestFunction phi, psi;
        phi.cos_c.assign(cov.modes.size(), 0.0);
        phi.sin_c.assign(cov.modes.size(), 0.0);
        psi = phi;
        phi.cos_c[p] = 1.0;
        psi.cos_c[cov.modes.size() - 1 - p] = 1.0;
        auto r = vfl::mc_covariance_functional(cov, kern, sym, t, phi, psi, regime, reps, seed,
                                               ctx.threads);
        r.label = "cross-mode " + std::to_string(p);
        results.push_back(std::move(r));
    }
    const vfl::CLTSummary summary = vfl::clt_band_test(results);
    write_text(ctx.out / "verify.json", vfl::mc_report_json(results, summary) + "\n");
    finish_manifest(ctx, "verify");
    std::cout << "verification suite: " << (summary.pass ? "pass" : "FAIL") << " ("
              << summary.passes << "/" << summary.total << ")\n";
    return summary.pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vfl: numerical laboratory for linear stochastic Volterra equations"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    unsigned threads = 0;
    std::uint64_t seed = 42;
    app.add_option("--config", config_path, "JSON config file (schema vfl/1)");
    app.add_option("--out", out_dir, "output directory");
    auto* threads_opt = app.add_option("--threads", threads, "worker cap (env VFL_THREADS)");
    auto* seed_opt = app.add_option("--seed", seed, "master RNG seed");

    auto add_common = [](CLI::App* s) {
        s->add_option("--kernel", "kernel: constant|linear|exp|linexp|power:<a>|tabulated")
            ->default_str("constant");
    };

    CLI::App* c_res = app.add_subcommand("resolvent", "solve s/r on a grid");
    add_common(c_res);
    c_res->add_option("--quantity")->default_str("s");
    c_res->add_option("--convention")->default_str("ch4_plus");
    c_res->add_option("--mu")->default_str("1");
    c_res->add_option("--tmax")->default_val(2.0);
    c_res->add_option("--step")->default_val(1e-3);
    c_res->add_option("--tol")->default_val(1e-4);

    CLI::App* c_sub = app.add_subcommand("subordinate", "subordination identity residuals");
    c_sub->add_option("--alpha")->default_val(0.5);
    c_sub->add_option("--beta")->default_val(1.0);
    c_sub->add_option("--mu")->default_str("1");
    c_sub->add_option("--t")->default_str("1");

    CLI::App* c_yos = app.add_subcommand("yosida", "Yosida convergence sweep");
    add_common(c_yos);
    c_yos->add_option("--gamma")->default_val(4.0);
    c_yos->add_option("--n")->default_str("8,16,32,64,128,256,512,1024");
    c_yos->add_option("--tmax")->default_val(2.0);
    c_yos->add_option("--step")->default_val(1e-3);
    c_yos->add_option("--tol")->default_val(1e-6);

    CLI::App* c_sim = app.add_subcommand("simulate", "sample field trajectories");
    add_common(c_sim);
    c_sim->add_option("--d")->default_val(std::size_t{1});
    c_sim->add_option("--q")->default_val(1.0);
    c_sim->add_option("--N")->default_val(8);
    c_sim->add_option("--alpha-s")->default_val(2.0);
    c_sim->add_option("--tmax")->default_val(1.0);
    c_sim->add_option("--step")->default_val(1e-2);
    c_sim->add_option("--regime")->default_str("zero_initial");
    c_sim->add_flag("--binary");

    CLI::App* c_reg = app.add_subcommand("regularity", "regularity criteria");
    std::string reg_mode;
    c_reg->add_option("mode", reg_mode, "function-valued|case1|case3|continuity|gamma-domain|sobolev")
        ->required();
    add_common(c_reg);
    c_reg->add_option("--d")->default_val(std::size_t{2});
    c_reg->add_option("--beta")->default_val(1.0);
    c_reg->add_option("--alpha-s")->default_val(2.0);
    c_reg->add_option("--t")->default_val(1.0);
    c_reg->add_option("--eps")->default_val(0.5);
    c_reg->add_option("--delta")->default_val(0.5);
    c_reg->add_option("--q")->default_val(1.0);
    c_reg->add_option("--alpha")->default_val(0.0);

    CLI::App* c_lim = app.add_subcommand("limit-measure", "limit measure diagnostics");
    add_common(c_lim);
    c_lim->add_option("--d")->default_val(std::size_t{3});
    c_lim->add_option("--beta")->default_val(1.0);
    c_lim->add_option("--alpha-s")->default_val(2.0);
    c_lim->add_option("--kmax")->default_val(10);

    CLI::App* c_adm = app.add_subcommand("admissible", "admissibility constant C_b");
    add_common(c_adm);
    c_adm->add_option("--n2")->default_str("4,16,64,256,1024,4096,10000");

    CLI::App* c_hol = app.add_subcommand("holder", "Hoelder exponent of a mode path");
    add_common(c_hol);
    c_hol->add_option("--regime")->default_str("zero_initial");
    c_hol->add_option("--n2")->default_val(0.0);
    c_hol->add_option("--steps")->default_val(std::size_t{65536});
    c_hol->add_option("--step")->default_val(2.5e-4);

    CLI::App* c_ver = app.add_subcommand("verify", "Monte Carlo verification battery");
    add_common(c_ver);
    c_ver->add_option("--d")->default_val(std::size_t{1});
    c_ver->add_option("--q")->default_val(1.0);
    c_ver->add_option("--N")->default_val(64);
    c_ver->add_option("--reps")->default_val(std::size_t{10000});
    c_ver->add_option("--t")->default_val(1.0);
    c_ver->add_option("--regime")->default_str("zero_initial");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    Ctx ctx;
    try {
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw vfl::ConfigError("cannot read config: " + config_path);
            ctx.cfg = json::parse(is);
            if (!ctx.cfg.is_object() || ctx.cfg.value("schema", "") != "vfl/1")
                throw vfl::ConfigError("config must be an object with \"schema\": \"vfl/1\"");
        } else {
            ctx.cfg = json::object();
        }
        if (threads_opt->count() == 0) {
            if (ctx.cfg.contains("threads"))
                threads = ctx.cfg.at("threads").get<unsigned>();
            else if (const char* env = std::getenv("VFL_THREADS"))
                threads = static_cast<unsigned>(std::stoul(env));
            else
                threads = 1;
        }
        ctx.threads = std::max(1u, threads);
        if (seed_opt->count() == 0 && ctx.cfg.contains("seed"))
            seed = ctx.cfg.at("seed").get<std::uint64_t>();
        ctx.seed = seed;
        if (ctx.cfg.contains("out") && out_dir == ".") out_dir = ctx.cfg.at("out").get<std::string>();
        ctx.out = out_dir;
        fs::create_directories(ctx.out);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(c_res)) return cmd_resolvent(ctx, c_res);
        if (app.got_subcommand(c_sub)) return cmd_subordinate(ctx, c_sub);
        if (app.got_subcommand(c_yos)) return cmd_yosida(ctx, c_yos);
        if (app.got_subcommand(c_sim)) return cmd_simulate(ctx, c_sim);
        if (app.got_subcommand(c_reg)) return cmd_regularity(ctx, c_reg, reg_mode);
        if (app.got_subcommand(c_lim)) return cmd_limit_measure(ctx, c_lim);
        if (app.got_subcommand(c_adm)) return cmd_admissible(ctx, c_adm);
        if (app.got_subcommand(c_hol)) return cmd_holder(ctx, c_hol);
        if (app.got_subcommand(c_ver)) return cmd_verify(ctx, c_ver);
    } catch (const vfl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
