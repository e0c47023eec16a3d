#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "mtw/error.hpp"
#include "mtw/fit.hpp"
#include "mtw/io.hpp"
#include "mtw/metrics.hpp"
#include "mtw/model.hpp"
#include "mtw/parallel.hpp"
#include "mtw/sim.hpp"
#include "mtw/specfun.hpp"
#include "output.hpp"

namespace mtw::cli {

namespace {

using nlohmann::json;

struct ModelFlags {
    double K = 0.0;
    std::vector<double> delta;
    double mu = 1.0;
    double gbar = 1.0;
    std::size_t quad_nodes = 64;
    std::size_t kmax = 1000;
    double tol = 1e-12;
    std::size_t max_dim = 4;

    MtwParams params() const { return {K, delta, mu, gbar}; }
    NumericPolicy policy() const { return {quad_nodes, kmax, tol, max_dim}; }
};

struct OutFlags {
    std::string path;
    std::string format = "csv";
};

struct GridFlags {
    double lo = 0.0;
    double hi = 5.0;
    std::size_t points = 200;

    std::vector<double> linear() const {
        if (points < 1) throw ValidationError(ValidationCode::invalid_argument, "--points must be >= 1");
        std::vector<double> v(points);
        for (std::size_t i = 0; i < points; ++i)
            v[i] = points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        return v;
    }
    std::vector<double> logarithmic() const {
        if (!(lo > 0.0) || !(hi > 0.0)) {
            throw ValidationError(ValidationCode::invalid_argument, "logarithmic grid needs positive bounds");
        }
        auto v = GridFlags{std::log(lo), std::log(hi), points}.linear();
        for (double& x : v) x = std::exp(x);
        return v;
    }
    json to_json() const { return {{"min", lo}, {"max", hi}, {"points", points}}; }
};

void add_model(CLI::App* sub, ModelFlags& m) {
    sub->add_option("--K", m.K, "specular-to-diffuse power ratio")->capture_default_str();
    sub->add_option("--delta", m.delta, "per-cluster asymmetry Delta_i (repeat for each two-wave cluster)");
    sub->add_option("--mu", m.mu, "number of clusters (real)")->capture_default_str();
    sub->add_option("--gbar", m.gbar, "mean SNR")->capture_default_str();
    sub->add_option("--quad-nodes", m.quad_nodes, "Gauss-Legendre nodes per angular dimension")->capture_default_str();
    sub->add_option("--kmax", m.kmax, "cap on Gamma-mixture terms")->capture_default_str();
    sub->add_option("--tol", m.tol, "mixture tail-mass tolerance")->capture_default_str();
    sub->add_option("--max-dim", m.max_dim, "largest angular dimension for the integral form")->capture_default_str();
}

void add_output(CLI::App* sub, OutFlags& o) {
    sub->add_option("--out", o.path, "output file (stdout when omitted)");
    sub->add_option("--format", o.format, "csv or json")->capture_default_str();
}

void add_grid(CLI::App* sub, GridFlags& g, const std::string& lo_name, const std::string& hi_name,
              const std::string& what) {
    sub->add_option(lo_name, g.lo, "lower end of the " + what + " grid")->capture_default_str();
    sub->add_option(hi_name, g.hi, "upper end of the " + what + " grid")->capture_default_str();
    sub->add_option("--points", g.points, "number of grid points")->capture_default_str();
}

class Emitter {
public:
    Emitter(std::ostream& out) : out_(out) {}

    void table(const json& meta, const Table& t, const OutFlags& o) const {
        const auto fmt = parse_table_format(o.format);
        with_stream(o.path, [&](std::ostream& s) { write_table(s, meta, t, fmt); });
    }

    void document(const json& j, const std::string& path) const {
        with_stream(path, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
    }

    void with_stream(const std::string& path, const std::function<void(std::ostream&)>& body) const {
        if (path.empty()) {
            body(out_);
            return;
        }
        std::ofstream f(path);
        if (!f) throw ValidationError(ValidationCode::invalid_argument, "cannot write '" + path + "'");
        body(f);
        if (!f) throw NumericError("write to '" + path + "' failed");
    }

private:
    std::ostream& out_;
};

json meta_for(const std::string& command, const ModelFlags& m) {
    return {{"command", command}, {"params", to_json(m.params())}, {"policy", to_json(m.policy())}};
}

void warn_physical(const MtwParams& p, std::ostream& err) {
    validate(p);
    if (!physically_consistent(p)) {
        err << "warning: " << p.n_two_wave() << " two-wave clusters exceed ceil(mu) = " << std::ceil(p.mu)
            << "; the formulas evaluate but no physical channel realizes this set\n";
    }
}

void warn_cap(const SnrDistribution& d, std::ostream& err) {
    if (d.coeffs().cap_hit) {
        err << "warning: series stopped at kmax = " << d.coeffs().size()
            << " with tail mass " << d.coeffs().tail_mass << '\n';
    }
}

// Prepends "--key value" pairs from a JSON config file for every key not
// given on the command line, so explicit flags win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    if (args.size() < 2) return args;
    std::string path;
    for (std::size_t i = 2; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw ValidationError(ValidationCode::invalid_argument, "cannot open config '" + path + "'");
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw ValidationError(ValidationCode::invalid_argument, "config '" + path + "': " + e.what());
    }
    if (!cfg.is_object()) throw ValidationError(ValidationCode::invalid_argument, "config must be a JSON object");

    auto given = [&](const std::string& flag) {
        for (std::size_t i = 2; i < args.size(); ++i)
            if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    auto scalar = [](const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) return format_double(v.get<double>());
        throw ValidationError(ValidationCode::invalid_argument, "config values must be numbers or strings");
    };
    std::vector<std::string> extra;
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (given(flag)) continue;
        if (value.is_array()) {
            for (const auto& v : value) {
                extra.push_back(flag);
                extra.push_back(scalar(v));
            }
        } else if (value.is_boolean()) {
            if (value.get<bool>()) extra.push_back(flag);
        } else {
            extra.push_back(flag);
            extra.push_back(scalar(value));
        }
    }
    args.insert(args.begin() + 2, extra.begin(), extra.end());
    return args;
}

int run_parsed(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-cluster two-wave fading: distribution, metrics, simulation and fitting", "mtw"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    const Emitter emit(out);
    std::function<void()> action;

    // pdf / cdf
    ModelFlags dist_m;
    OutFlags dist_o;
    GridFlags dist_g{0.0, 5.0, 200};
    std::string method = "auto";
    for (const std::string name : {"pdf", "cdf"}) {
        auto* sub = app.add_subcommand(name, "evaluate the " + name + " of the SNR on a grid");
        add_model(sub, dist_m);
        add_output(sub, dist_o);
        add_grid(sub, dist_g, "--xmin", "--xmax", "x");
        sub->add_option("--method", method, "auto, integral or series")->capture_default_str();
        sub->callback([&, name] {
            action = [&, name] {
                warn_physical(dist_m.params(), err);
                const SnrDistribution d(dist_m.params(), dist_m.policy());
                const Method mth = parse_method(method);
                if (d.resolve(mth) == Method::series) warn_cap(d, err);
                const auto xs = dist_g.linear();
                const auto ys = name == "pdf" ? d.pdf_grid(xs, mth) : d.cdf_grid(xs, mth);
                Table t{{"x", name}, {}};
                for (std::size_t i = 0; i < xs.size(); ++i) t.rows.push_back({xs[i], ys[i]});
                json meta = meta_for(name, dist_m);
                meta["grid"] = dist_g.to_json();
                meta["method"] = to_string(d.resolve(mth));
                emit.table(meta, t, dist_o);
            };
        });
    }

    // moments
    ModelFlags mom_m;
    OutFlags mom_o;
    unsigned nmax = 6;
    auto* moments = app.add_subcommand("moments", "non-central moments E[gamma^n], n = 0..nmax");
    add_model(moments, mom_m);
    add_output(moments, mom_o);
    moments->add_option("--nmax", nmax, "highest order")->capture_default_str();
    moments->callback([&] {
        action = [&] {
            warn_physical(mom_m.params(), err);
            Table t{{"n", "moment"}, {}};
            for (unsigned n = 0; n <= nmax; ++n) t.rows.push_back({double(n), moment(mom_m.params(), n)});
            json meta = meta_for("moments", mom_m);
            meta["nmax"] = nmax;
            emit.table(meta, t, mom_o);
        };
    });

    // aof
    ModelFlags aof_m;
    OutFlags aof_o;
    auto* aof_cmd = app.add_subcommand("aof", "amount of fading");
    add_model(aof_cmd, aof_m);
    add_output(aof_cmd, aof_o);
    aof_cmd->callback([&] {
        action = [&] {
            warn_physical(aof_m.params(), err);
            emit.table(meta_for("aof", aof_m), Table{{"aof"}, {{aof(aof_m.params())}}}, aof_o);
        };
    });

    // mgf
    ModelFlags mgf_m;
    OutFlags mgf_o;
    GridFlags mgf_g{-2.0, 0.0, 101};
    unsigned order = 0;
    auto* mgf_cmd = app.add_subcommand("mgf", "MGF or generalized MGF E[gamma^n e^{s gamma}] on an s grid");
    add_model(mgf_cmd, mgf_m);
    add_output(mgf_cmd, mgf_o);
    add_grid(mgf_cmd, mgf_g, "--smin", "--smax", "s");
    mgf_cmd->add_option("--order", order, "derivative order n")->capture_default_str();
    mgf_cmd->callback([&] {
        action = [&] {
            const MtwParams p = mgf_m.params();
            warn_physical(p, err);
            const auto ss = mgf_g.linear();
            Table t{{"s", order == 0 ? "mgf" : "gmgf"}, {}};
            for (double s : ss) t.rows.push_back({s, order == 0 ? mgf(p, s) : gmgf(p, order, s)});
            json meta = meta_for("mgf", mgf_m);
            meta["grid"] = mgf_g.to_json();
            meta["order"] = order;
            emit.table(meta, t, mgf_o);
        };
    });

    // outage
    ModelFlags out_m;
    OutFlags out_o;
    GridFlags out_g{0.0, 40.0, 41};
    double rate = 1.0;
    auto* outage_cmd = app.add_subcommand("outage", "outage probability versus mean SNR in dB");
    add_model(outage_cmd, out_m);
    add_output(outage_cmd, out_o);
    add_grid(outage_cmd, out_g, "--snr-min-db", "--snr-max-db", "mean SNR (dB)");
    outage_cmd->add_option("--rate", rate, "target rate R_s in bit/s/Hz")->capture_default_str();
    outage_cmd->callback([&] {
        action = [&] {
            warn_physical(out_m.params(), err);
            const auto db = out_g.linear();
            Table t{{"snr_db", "outage", "asymptotic"}, std::vector<std::vector<double>>(db.size())};
            const double th = std::exp2(rate) - 1.0;
            parallel::for_each_index(db.size(), [&](std::size_t i) {
                MtwParams p = out_m.params();
                p.mean_snr = std::pow(10.0, db[i] / 10.0);
                t.rows[i] = {db[i], outage(p, out_m.policy(), rate), asymptotic_cdf(p, th)};
            });
            json meta = meta_for("outage", out_m);
            meta["grid"] = out_g.to_json();
            meta["rate"] = rate;
            emit.table(meta, t, out_o);
        };
    });

    // sir-outage
    ModelFlags sir_m;
    OutFlags sir_o;
    GridFlags sir_g{0.0, 20.0, 21};
    InterferenceScenario scen{3, 1, 1.0, 10.0};
    auto* sir_cmd = app.add_subcommand("sir-outage", "interference-limited outage with M-branch MRC vs average SIR per branch (dB)");
    add_model(sir_cmd, sir_m);
    add_output(sir_cmd, sir_o);
    add_grid(sir_cmd, sir_g, "--sir-min-db", "--sir-max-db", "average SIR per branch (dB)");
    sir_cmd->add_option("--branches", scen.branches, "MRC branches M")->capture_default_str();
    sir_cmd->add_option("--interferers", scen.interferers, "Rayleigh interferers L")->capture_default_str();
    sir_cmd->add_option("--threshold", scen.threshold, "SIR threshold beta (linear)")->capture_default_str();
    sir_cmd->callback([&] {
        action = [&] {
            const MtwParams p = sir_m.params();
            warn_physical(p, err);
            const auto db = sir_g.linear();
            Table t{{"sir_db", "interferer_power", "outage"}, std::vector<std::vector<double>>(db.size())};
            parallel::for_each_index(db.size(), [&](std::size_t i) {
                InterferenceScenario s = scen;
                s.interferer_power = p.mean_snr / (s.interferers * std::pow(10.0, db[i] / 10.0));
                t.rows[i] = {db[i], s.interferer_power, sir_outage(s, p, sir_m.policy())};
            });
            json meta = meta_for("sir-outage", sir_m);
            meta["grid"] = sir_g.to_json();
            meta["branches"] = scen.branches;
            meta["interferers"] = scen.interferers;
            meta["threshold"] = scen.threshold;
            emit.table(meta, t, sir_o);
        };
    });

    // roc / auc
    ModelFlags det_m;
    OutFlags det_o;
    GridFlags det_g{1e-3, 100.0, 100};
    unsigned u = 1;
    unsigned branches = 1;
    auto* roc_cmd = app.add_subcommand("roc", "energy-detection ROC over a log-spaced threshold grid");
    add_model(roc_cmd, det_m);
    add_output(roc_cmd, det_o);
    add_grid(roc_cmd, det_g, "--eta-min", "--eta-max", "threshold");
    roc_cmd->add_option("--u", u, "time-bandwidth product")->capture_default_str();
    roc_cmd->add_option("--branches", branches, "MRC branches")->capture_default_str();
    roc_cmd->callback([&] {
        action = [&] {
            warn_physical(det_m.params(), err);
            const auto etas = det_g.logarithmic();
            const auto pts = roc(det_m.params(), u, etas, det_m.policy(), branches);
            Table t{{"eta", "pf", "pd"}, {}};
            for (const auto& r : pts) t.rows.push_back({r.eta, r.pf, r.pd});
            json meta = meta_for("roc", det_m);
            meta["grid"] = det_g.to_json();
            meta["u"] = u;
            meta["branches"] = branches;
            emit.table(meta, t, det_o);
        };
    });
    auto* auc_cmd = app.add_subcommand("auc", "area under the energy-detection ROC");
    add_model(auc_cmd, det_m);
    add_output(auc_cmd, det_o);
    auc_cmd->add_option("--u", u, "time-bandwidth product")->capture_default_str();
    auc_cmd->add_option("--branches", branches, "MRC branches")->capture_default_str();
    auc_cmd->callback([&] {
        action = [&] {
            warn_physical(det_m.params(), err);
            json meta = meta_for("auc", det_m);
            meta["u"] = u;
            meta["branches"] = branches;
            emit.table(meta, Table{{"auc"}, {{auc(det_m.params(), u, det_m.policy(), branches)}}}, det_o);
        };
    });

    // composite
    ModelFlags ig_m;
    OutFlags ig_o;
    GridFlags ig_g{-10.0, 20.0, 31};
    IgParams ig;
    auto* ig_cmd = app.add_subcommand("composite", "Inverse-Gamma shadowed outage versus SNR threshold (dB)");
    add_model(ig_cmd, ig_m);
    add_output(ig_cmd, ig_o);
    add_grid(ig_cmd, ig_g, "--gth-min-db", "--gth-max-db", "threshold (dB)");
    ig_cmd->add_option("--lambda", ig.lambda, "IG shape (integer >= 2)")->capture_default_str();
    ig_cmd->add_option("--qbar", ig.mean_power, "mean received power")->capture_default_str();
    ig_cmd->add_option("--gbar-q", ig.mean_snr_q, "mean SNR of the shadowed link")->capture_default_str();
    ig_cmd->callback([&] {
        action = [&] {
            warn_physical(ig_m.params(), err);
            const auto db = ig_g.linear();
            Table t{{"gamma_th_db", "outage"}, std::vector<std::vector<double>>(db.size())};
            parallel::for_each_index(db.size(), [&](std::size_t i) {
                t.rows[i] = {db[i], ig_outage(ig, ig_m.params(), std::pow(10.0, db[i] / 10.0))};
            });
            json meta = meta_for("composite", ig_m);
            meta["grid"] = ig_g.to_json();
            meta["lambda"] = ig.lambda;
            meta["qbar"] = ig.mean_power;
            meta["gbar_q"] = ig.mean_snr_q;
            emit.table(meta, t, ig_o);
        };
    });

    // simulate
    ModelFlags sim_m;
    std::string sim_out;
    std::size_t sim_n = 100000;
    std::uint64_t seed = 1;
    double sigma2 = 0.5;
    std::string kind = "snr";
    auto* sim_cmd = app.add_subcommand("simulate", "draw samples from the physical model (integer mu)");
    add_model(sim_cmd, sim_m);
    sim_cmd->add_option("--n", sim_n, "number of samples")->capture_default_str();
    sim_cmd->add_option("--seed", seed, "generator seed")->capture_default_str();
    sim_cmd->add_option("--sigma2", sigma2, "diffuse variance per quadrature")->capture_default_str();
    sim_cmd->add_option("--kind", kind, "snr, envelope or power")->capture_default_str();
    sim_cmd->add_option("--out", sim_out, "sample file; the sidecar goes to <out>.json")->required();
    sim_cmd->callback([&] {
        action = [&] {
            const MtwParams p = sim_m.params();
            const SampleKind k = parse_sample_kind(kind);
            const PhysicalConfig cfg = amplitudes_from_params(p, sigma2);
            EnvelopeSamples s = sample_snr(cfg, sim_n, seed);
            if (k == SampleKind::envelope) s = snr_to_envelope(s);
            if (k == SampleKind::power) {
                for (double& v : s.values) v /= cfg.es_n0;
                s.kind = SampleKind::power;
            }
            save_samples(sim_out, s);
            json side{{"seed", seed},
                      {"n", sim_n},
                      {"params", to_json(p)},
                      {"kind", to_string(k)},
                      {"sigma2", sigma2},
                      {"es_n0", cfg.es_n0}};
            emit.document(side, sim_out + ".json");
        };
    });

    // fit
    NumericPolicy fit_policy;
    std::string input;
    std::string in_format = "plain";
    std::string column;
    std::size_t bins = 0;
    unsigned n_two_spec = 1;
    unsigned restarts = 8;
    std::string report_path;
    auto* fit_cmd = app.add_subcommand("fit", "fit K, Delta and mu to envelope samples");
    fit_cmd->add_option("--input", input, "envelope sample file")->required();
    fit_cmd->add_option("--format", in_format, "plain or csv")->capture_default_str();
    fit_cmd->add_option("--column", column, "CSV column name or 0-based index");
    fit_cmd->add_option("--bins", bins, "histogram bins (0 = Freedman-Diaconis)")->capture_default_str();
    fit_cmd->add_option("--n-two-spec", n_two_spec, "clusters with two specular waves (0..3)")->capture_default_str();
    fit_cmd->add_option("--restarts", restarts, "multi-start count")->capture_default_str();
    fit_cmd->add_option("--kmax", fit_policy.series_kmax, "cap on Gamma-mixture terms")->capture_default_str();
    fit_cmd->add_option("--out", report_path, "report JSON (stdout when omitted)");
    fit_cmd->callback([&] {
        action = [&] {
            const EnvelopeSamples s = load_samples(input, parse_sample_format(in_format), column);
            const EmpiricalPdf hist = empirical_pdf(s, bins);
            const FitReport r = fit(hist, n_two_spec, restarts, fit_policy);
            json report{{"params", {{"K", r.params.K}, {"delta", r.params.deltas}, {"mu", r.params.mu}}},
                        {"mse", r.mse},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"normalization_scale", s.normalization_scale},
                        {"evaluations", r.evaluations},
                        {"bins", hist.bin_centers.size()},
                        {"samples", s.count},
                        {"restarts", restarts}};
            emit.document(report, report_path);
        };
    });

    // selftest
    int failures = 0;
    auto* st = app.add_subcommand("selftest", "run the numerical cross-checks at reduced scale");
    st->callback([&] { action = [&] { failures = selftest(out); }; });

    // hidden point probe
    std::string fn;
    std::vector<double> probe_args;
    auto* probe = app.add_subcommand("specfun-probe", "")->group("");
    probe->add_option("--fn", fn, "function name")->required();
    probe->add_option("--arg", probe_args, "arguments in order")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    probe->callback([&] {
        action = [&] {
            auto need = [&](std::size_t n) {
                if (probe_args.size() != n) {
                    throw ValidationError(ValidationCode::invalid_argument,
                                          fn + " takes " + std::to_string(n) + " --arg values");
                }
            };
            double v = 0.0;
            if (fn == "ln_gamma") {
                need(1);
                v = specfun::ln_gamma(probe_args[0]);
            } else if (fn == "bessel_i_scaled") {
                need(2);
                v = specfun::bessel_i_scaled(probe_args[0], probe_args[1]).scaled_value;
            } else if (fn == "reg_lower_gamma") {
                need(2);
                v = specfun::reg_lower_gamma(probe_args[0], probe_args[1]);
            } else if (fn == "marcum_q") {
                need(3);
                v = specfun::marcum_q(probe_args[0], probe_args[1], probe_args[2]);
            } else if (fn == "cos_exp_moment") {
                need(2);
                v = specfun::cos_exp_moment(probe_args[0], static_cast<unsigned>(probe_args[1]));
            } else {
                throw ValidationError(ValidationCode::invalid_argument, "unknown function '" + fn + "'");
            }
            out << format_double(v) << '\n';
        };
    });

    // Vector options accumulate, everything else takes the last value.
    for (auto* sub : app.get_subcommands({})) {
        if (auto* d = sub->get_option_no_throw("--delta")) d->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
        app.parse(std::move(rev));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kValidation;
    }
    if (action) action();
    return failures == 0 ? kOk : kNumeric;
}

}  // namespace

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::string> args(argv, argv + argc);
        return run_parsed(merge_config(std::move(args)), out, err);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kValidation;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    }
}

}  // namespace mtw::cli
