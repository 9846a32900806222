// Command-line front end: ingest outcome sequences, dispatch analyses,
// emit JSON reports and plot-ready CSV data.

#include "latcirc/bayes.hpp"
#include "latcirc/distributions.hpp"
#include "latcirc/divergence.hpp"
#include "latcirc/inference.hpp"
#include "latcirc/io.hpp"
#include "latcirc/moments.hpp"
#include "latcirc/sampling.hpp"
#include "latcirc/special.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

using nlohmann::json;
namespace lc = latcirc;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr const char* kReportSchema = "latcirc-report/1";

json envelope(const std::string& command, std::uint64_t seed, json config) {
    return json{{"schema", kReportSchema},
                {"tool", {{"name", "latcirc"}, {"version", kToolVersion}}},
                {"command", command},
                {"seed", seed},
                {"config", std::move(config)}};
}

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw lc::data_error("cannot open output file " + out_path);
        out << report.dump(2) << "\n";
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw lc::data_error("cannot open output file " + path);
    out << text;
}

json test_to_json(const lc::TestReport& rep) {
    json j{{"name", rep.name},
           {"value", rep.value},
           {"p_value_mc", rep.p_value},
           {"replications", rep.replications}};
    if (!std::isnan(rep.asymptotic_p)) j["p_value_asymptotic"] = rep.asymptotic_p;
    if (!std::isnan(rep.crit5)) j["crit5"] = rep.crit5;
    if (!std::isnan(rep.crit1)) j["crit1"] = rep.crit1;
    if (!std::isnan(rep.null_sd)) j["se_under_null"] = rep.null_sd;
    return j;
}

json summary_to_json(const lc::ParamSummary& s) {
    return json{{"mean", s.mean}, {"sd", s.sd}, {"lo95", s.lo95}, {"hi95", s.hi95}};
}

json circular_to_json(const lc::CircularSummary& s) {
    return json{{"mean_angle", s.mean_angle}, {"rbar", s.rbar}};
}

// ---------------------------------------------------------------------------
// Shared option bundles.
// ---------------------------------------------------------------------------

struct FamilyOptions {
    std::string family = "cdwc";
    int m = 2;
    double concentration = 0.0;
    int t = 0;
    double mu = std::numeric_limits<double>::quiet_NaN();
    double stable_a = 1.0;
    double stable_b = 0.0;
    double gamma = 0.0;
    double kj_lambda = 0.0;
    double q = 0.5;

    lc::FamilySpec to_spec() const {
        lc::FamilySpec spec;
        spec.family = lc::family_from_name(family);
        spec.m = m;
        spec.concentration = concentration;
        spec.t = t;
        if (!std::isnan(mu)) {
            spec.mu = mu;
            spec.mu_is_continuous = true;
        }
        spec.stable_a = stable_a;
        spec.stable_b = stable_b;
        spec.kj_gamma = gamma;
        spec.kj_lambda = kj_lambda;
        spec.q = q;
        return spec;
    }
};

void add_family_options(CLI::App* cmd, FamilyOptions& fo) {
    cmd->add_option("--family", fo.family, "family tag (cdvm, cdwc, mdvm, mdwc, cdkj, mdkj, "
                                           "cdstable, cdwn, cdcardioid, mdcardioid, wpoisson, "
                                           "wgeometric, wskewlaplace)");
    cmd->add_option("--m", fo.m, "lattice size")->required();
    cmd->add_option("--concentration,--kappa,--rho,--lambda,--p", fo.concentration,
                    "concentration parameter (kappa, rho, Poisson lambda or geometric p)");
    cmd->add_option("--t", fo.t, "lattice centering parameter");
    cmd->add_option("--mu", fo.mu, "continuous mean direction (radians), where permitted");
    cmd->add_option("--stable-a", fo.stable_a, "stable exponent in (0, 2]");
    cmd->add_option("--stable-b", fo.stable_b, "stable skewness");
    cmd->add_option("--gamma", fo.gamma, "Kato-Jones gamma");
    cmd->add_option("--kj-lambda", fo.kj_lambda, "Kato-Jones lambda (radians)");
    cmd->add_option("--q", fo.q, "skew-Laplace second parameter");
}

struct DataOptions {
    std::string path;
    std::string format = "sequence";
    int m = 2;
};

void add_data_options(CLI::App* cmd, DataOptions& d) {
    cmd->add_option("--data", d.path, "input data file")->required();
    cmd->add_option("--format", d.format, "sequence | frequency");
    cmd->add_option("--m", d.m, "lattice size")->required();
}

struct McmcOptions {
    std::string config_path;
    std::optional<int> iterations, burnin, thin, chains;

    lc::McmcConfig resolve() const {
        lc::McmcConfig cfg =
            config_path.empty() ? lc::McmcConfig{} : lc::load_mcmc_config(config_path);
        if (iterations) cfg.iterations = *iterations;
        if (burnin) cfg.burnin = *burnin;
        if (thin) cfg.thin = *thin;
        if (chains) cfg.chains = *chains;
        cfg.validate();
        return cfg;
    }

    json to_json(const lc::McmcConfig& cfg) const {
        return json{{"iterations", cfg.iterations}, {"burnin", cfg.burnin},
                    {"thin", cfg.thin},             {"chains", cfg.chains},
                    {"kappa_max", cfg.kappa_max},   {"rho_step", cfg.rho_step},
                    {"kappa_step", cfg.kappa_step}, {"k_window", cfg.k_window}};
    }
};

void add_mcmc_options(CLI::App* cmd, McmcOptions& o) {
    cmd->add_option("--mcmc-config", o.config_path, "key=value sampler configuration file");
    cmd->add_option("--iterations", o.iterations, "override: sweeps per chain");
    cmd->add_option("--burnin", o.burnin, "override: burn-in sweeps");
    cmd->add_option("--thin", o.thin, "override: thinning interval");
    cmd->add_option("--chains", o.chains, "override: number of chains");
}

lc::Family location_family(const std::string& name) {
    const lc::Family f = lc::family_from_name(name);
    switch (f) {
        case lc::Family::CDVM:
        case lc::Family::CDWC:
        case lc::Family::MDVM:
        case lc::Family::MDWC: return f;
        default:
            throw CLI::ValidationError("--family", "estimation supports cdvm, cdwc, mdvm, mdwc");
    }
}

json changepoint_to_json(const lc::ChangepointResult& r, int m, bool with_draws) {
    json j{{"rho2", summary_to_json(r.tau2_summary)},
           {"t2", circular_to_json(r.t2_summary)},
           {"k",
            {{"mode", r.k_mode},
             {"sd", r.k_sd},
             {"lo95", r.k_lo95},
             {"hi95", r.k_hi95},
             {"multimodal", r.k_multimodal}}},
           {"acceptance", {{"tau", r.accept_tau}, {"t", r.accept_t}, {"k", r.accept_k}}},
           {"tuning_warning", r.tuning_warning},
           {"m", m},
           {"kept_draws", r.tau2.size()}};
    if (with_draws) {
        j["draws"] = json{{"tau2", r.tau2}, {"t2", r.t2}, {"k", r.k}};
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete circular distributions: pmfs, estimation, tests, changepoints, "
                 "mixtures and divergence diagnostics"};
    app.require_subcommand(1);

    std::function<void()> action;
    std::string out_path;
    std::uint64_t seed = 1;

    // ----------------------------------------------------------------- pmf
    {
        auto* cmd = app.add_subcommand("pmf", "evaluate a family pmf");
        auto fo = std::make_shared<FamilyOptions>();
        auto plot_csv = std::make_shared<std::string>();
        add_family_options(cmd, *fo);
        cmd->add_option("--plot-csv", *plot_csv, "write r,angle,prob rows to this file");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->callback([&, fo, plot_csv]() {
            action = [&, fo, plot_csv]() {
                const lc::FamilySpec spec = fo->to_spec();
                const lc::Pmf pmf = lc::make_pmf(spec);
                json result{{"family", fo->family}, {"m", fo->m}};
                std::vector<double> probs(pmf.probs().data(), pmf.probs().data() + pmf.m());
                std::vector<double> angles;
                for (int r = 0; r < pmf.m(); ++r) angles.push_back(pmf.lattice().angle(r));
                result["probs"] = probs;
                result["angles"] = angles;
                result["mode"] = pmf.argmax();
                json rep = envelope("pmf", seed, {{"family", fo->family}, {"m", fo->m}});
                rep["result"] = result;
                if (!plot_csv->empty()) {
                    std::ostringstream csv;
                    csv << "r,angle,prob\n";
                    for (int r = 0; r < pmf.m(); ++r)
                        csv << r << "," << angles[static_cast<std::size_t>(r)] << ","
                            << probs[static_cast<std::size_t>(r)] << "\n";
                    write_text(*plot_csv, csv.str());
                }
                emit(rep, out_path);
            };
        });
    }

    // --------------------------------------------------------------- sample
    {
        auto* cmd = app.add_subcommand("sample",
                                       "draw from a family pmf, or from a continuous parent "
                                       "through a chosen discretization");
        auto fo = std::make_shared<FamilyOptions>();
        auto n = std::make_shared<int>(100);
        auto csv = std::make_shared<std::string>();
        auto parent = std::make_shared<std::string>();
        auto method = std::make_shared<std::string>("marginalized");
        add_family_options(cmd, *fo);
        cmd->add_option("--n", *n, "number of draws")->required();
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--csv", *csv, "also write the draws as a sequence-csv file");
        cmd->add_option("--parent", *parent,
                        "draw via a continuous parent instead of a family tag (vm | wc)");
        cmd->add_option("--method", *method,
                        "discretization for --parent: marginalized | conditionalized");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->callback([&, fo, n, csv, parent, method]() {
            action = [&, fo, n, csv, parent, method]() {
                std::vector<int> draws;
                json config{{"m", fo->m}, {"n", *n}};
                if (parent->empty()) {
                    draws = lc::sample_pmf(lc::make_pmf(fo->to_spec()), *n, seed);
                    config["family"] = fo->family;
                } else {
                    lc::Parent par;
                    if (*parent == "vm") par = lc::Parent::VonMises;
                    else if (*parent == "wc") par = lc::Parent::WrappedCauchy;
                    else throw CLI::ValidationError("--parent", "expected vm or wc");
                    lc::Discretization disc;
                    if (*method == "marginalized") disc = lc::Discretization::Marginalize;
                    else if (*method == "conditionalized") disc = lc::Discretization::Conditionalize;
                    else
                        throw CLI::ValidationError("--method",
                                                   "expected marginalized or conditionalized");
                    const double mu = std::isnan(fo->mu) ? lc::two_pi * fo->t / fo->m : fo->mu;
                    draws = lc::sample_via_parent(par, fo->concentration, mu, fo->m, disc, *n, seed);
                    config["parent"] = *parent;
                    config["method"] = *method;
                }
                if (!csv->empty()) {
                    std::ostringstream body;
                    for (int v : draws) body << v << "\n";
                    write_text(*csv, body.str());
                }
                json rep = envelope("sample", seed, std::move(config));
                rep["result"] = json{{"samples", draws}};
                emit(rep, out_path);
            };
        });
    }

    // ------------------------------------------------------------------ fit
    {
        auto* cmd = app.add_subcommand("fit", "maximum likelihood fit with bootstrap uncertainty");
        auto data = std::make_shared<DataOptions>();
        auto family = std::make_shared<std::string>("cdwc");
        auto bootstrap = std::make_shared<int>(500);
        add_data_options(cmd, *data);
        cmd->add_option("--family", *family, "cdvm | cdwc | mdvm | mdwc");
        cmd->add_option("--bootstrap", *bootstrap, "parametric bootstrap replicates (0 = skip)");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->callback([&, data, family, bootstrap]() {
            action = [&, data, family, bootstrap]() {
                const lc::Family fam = location_family(*family);
                const lc::Dataset ds =
                    lc::ingest(data->path, lc::data_format_from_name(data->format), data->m);
                const lc::SampleSummary s = lc::summarize(ds.observations, ds.m);
                lc::MleResult fit = lc::fit_family(s, fam);
                if (*bootstrap > 0) {
                    const lc::BootstrapResult bs =
                        lc::parametric_bootstrap(fam, fit, ds.m, s.n, *bootstrap, seed);
                    fit.se_tau = bs.se_tau;
                    fit.rbar_t = bs.rbar_t;
                }
                json result{{"family", *family},
                            {"m", ds.m},
                            {"n", s.n},
                            {"rbar", s.rbar1()},
                            {"thetabar", s.thetabar1()},
                            {"tau_hat", fit.tau_hat},
                            {"t_hat", fit.t_hat},
                            {"theta_hat", lc::two_pi * fit.t_hat / ds.m},
                            {"loglik", fit.loglik},
                            {"se_tau", fit.se_tau},
                            {"rbar_t", fit.rbar_t},
                            {"bootstrap", *bootstrap},
                            {"saturated", fit.saturated},
                            {"nonconcave_flag", fit.nonconcave}};
                if (fam == lc::Family::CDWC)
                    result["moment_estimate"] = lc::cdwc_moment_estimate(s);
                json rep = envelope("fit", seed,
                                    {{"family", *family}, {"m", ds.m}, {"bootstrap", *bootstrap}});
                rep["result"] = result;
                emit(rep, out_path);
            };
        });
    }

    // ------------------------------------------------------- test-uniformity
    {
        auto* cmd = app.add_subcommand("test-uniformity",
                                       "likelihood-ratio and classical uniformity tests");
        auto data = std::make_shared<DataOptions>();
        auto family = std::make_shared<std::string>("cdwc");
        auto reps = std::make_shared<int>(999);
        auto mc_reps = std::make_shared<int>(9999);
        add_data_options(cmd, *data);
        cmd->add_option("--family", *family, "family for the likelihood-ratio test");
        cmd->add_option("--replicates", *reps, "null resamples for the T statistic");
        cmd->add_option("--mc-replicates", *mc_reps, "null resamples for UG2/T1/T2");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->callback([&, data, family, reps, mc_reps]() {
            action = [&, data, family, reps, mc_reps]() {
                const lc::Family fam = location_family(*family);
                const lc::Dataset ds =
                    lc::ingest(data->path, lc::data_format_from_name(data->format), data->m);
                const lc::SampleSummary s = lc::summarize(ds.observations, ds.m);
                json result{{"n", s.n}, {"m", ds.m}, {"family", *family}};
                result["T"] = test_to_json(lc::uniformity_lr_test(s, fam, *reps, seed));
                result["UG2"] = test_to_json(lc::ug2_test(s, *mc_reps, lc::derive_seed(seed, 1)));
                result["T1sq"] =
                    test_to_json(lc::rayleigh_test(s, *mc_reps, lc::derive_seed(seed, 2)));
                result["T2sq"] =
                    test_to_json(lc::axial_rayleigh_test(s, *mc_reps, lc::derive_seed(seed, 3)));
                json rep = envelope("test-uniformity", seed,
                                    {{"family", *family},
                                     {"m", ds.m},
                                     {"replicates", *reps},
                                     {"mc_replicates", *mc_reps}});
                rep["result"] = result;
                emit(rep, out_path);
            };
        });
    }

    // ----------------------------------------------------------- test-serial
    {
        auto* cmd = app.add_subcommand("test-serial", "serial dependence on lag-1 differences");
        auto data = std::make_shared<DataOptions>();
        auto reps = std::make_shared<int>(100000);
        add_data_options(cmd, *data);
        cmd->add_option("--replicates", *reps, "null sequences simulated for critical values");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->callback([&, data, reps]() {
            action = [&, data, reps]() {
                if (lc::data_format_from_name(data->format) == lc::DataFormat::FrequencyCsv)
                    throw CLI::ValidationError(
                        "--format", "the serial test is order-sensitive; frequency input "
                                    "destroys observation order");
                const lc::Dataset ds =
                    lc::ingest(data->path, lc::DataFormat::SequenceCsv, data->m);
                const lc::SerialTestReport rep0 =
                    lc::serial_test(ds.observations, ds.m, *reps, seed);
                json rep = envelope("test-serial", seed,
                                    {{"m", ds.m}, {"replicates", *reps}});
                rep["result"] = json{{"n", ds.observations.size()},
                                     {"m", ds.m},
                                     {"C", test_to_json(rep0.cbar)},
                                     {"S", test_to_json(rep0.sbar)},
                                     {"R2", test_to_json(rep0.r2)}};
                emit(rep, out_path);
            };
        });
    }

    // ------------------------------------------------------------ changepoint
    {
        auto* cmd = app.add_subcommand("changepoint",
                                       "Bayesian uniform-to-family changepoint analysis");
        auto data = std::make_shared<DataOptions>();
        auto family = std::make_shared<std::string>("cdwc");
        auto mcmc = std::make_shared<McmcOptions>();
        auto stream = std::make_shared<std::string>();
        auto with_draws = std::make_shared<bool>(false);
        auto trace_csv = std::make_shared<std::string>();
        add_data_options(cmd, *data);
        cmd->add_option("--family", *family, "second-segment family (cdwc, cdvm, mdwc)");
        add_mcmc_options(cmd, *mcmc);
        cmd->add_option("--stream", *stream, "comma-separated prefix upper bounds");
        cmd->add_flag("--draws", *with_draws, "include raw thinned draws in the report");
        cmd->add_option("--trace-csv", *trace_csv, "write per-prefix interval traces here");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->callback([&, data, family, mcmc, stream, with_draws, trace_csv]() {
            action = [&, data, family, mcmc, stream, with_draws, trace_csv]() {
                if (lc::data_format_from_name(data->format) == lc::DataFormat::FrequencyCsv)
                    throw CLI::ValidationError(
                        "--format", "changepoint analysis is order-sensitive; frequency input "
                                    "destroys observation order");
                const lc::Dataset ds =
                    lc::ingest(data->path, lc::DataFormat::SequenceCsv, data->m);
                lc::ChangepointModel model;
                model.m = ds.m;
                model.family = lc::family_from_name(*family);
                const lc::McmcConfig cfg = mcmc->resolve();
                json rep = envelope("changepoint", seed,
                                    {{"family", *family}, {"m", ds.m}, {"mcmc", mcmc->to_json(cfg)}});
                if (stream->empty()) {
                    const lc::ChangepointResult r =
                        lc::changepoint_fit(ds.observations, model, cfg, seed);
                    rep["result"] = changepoint_to_json(r, ds.m, *with_draws);
                } else {
                    std::vector<int> prefixes;
                    std::stringstream ss(*stream);
                    std::string token;
                    while (std::getline(ss, token, ',')) prefixes.push_back(std::stoi(token));
                    const auto traces =
                        lc::changepoint_stream(ds.observations, prefixes, model, cfg, seed);
                    json arr = json::array();
                    std::ostringstream csv;
                    csv << "u,rho2_mean,rho2_lo95,rho2_hi95,t2_mean_angle,t2_rbar,k_mode,k_lo95,"
                           "k_hi95\n";
                    for (std::size_t i = 0; i < traces.size(); ++i) {
                        json item = changepoint_to_json(traces[i], ds.m, *with_draws);
                        item["prefix"] = prefixes[i];
                        arr.push_back(std::move(item));
                        const auto& r = traces[i];
                        csv << prefixes[i] << "," << r.tau2_summary.mean << ","
                            << r.tau2_summary.lo95 << "," << r.tau2_summary.hi95 << ","
                            << r.t2_summary.mean_angle << "," << r.t2_summary.rbar << ","
                            << r.k_mode << "," << r.k_lo95 << "," << r.k_hi95 << "\n";
                    }
                    if (!trace_csv->empty()) write_text(*trace_csv, csv.str());
                    rep["result"] = json{{"prefixes", arr}};
                }
                emit(rep, out_path);
            };
        });
    }

    // --------------------------------------------------------------- mixture
    {
        auto* cmd = app.add_subcommand("mixture", "Bayesian K-component mixture fit");
        auto data = std::make_shared<DataOptions>();
        auto family = std::make_shared<std::string>("cdwc");
        auto mcmc = std::make_shared<McmcOptions>();
        auto k = std::make_shared<int>(2);
        auto uniform_first = std::make_shared<bool>(false);
        auto with_draws = std::make_shared<bool>(false);
        add_data_options(cmd, *data);
        cmd->add_option("--family", *family, "component family (cdwc, cdvm, mdwc)");
        cmd->add_option("--K", *k, "number of components")->required();
        cmd->add_flag("--uniform-first", *uniform_first, "pin component 1 to the uniform law");
        add_mcmc_options(cmd, *mcmc);
        cmd->add_flag("--draws", *with_draws, "include raw thinned draws in the report");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->callback([&, data, family, mcmc, k, uniform_first, with_draws]() {
            action = [&, data, family, mcmc, k, uniform_first, with_draws]() {
                const lc::Dataset ds =
                    lc::ingest(data->path, lc::data_format_from_name(data->format), data->m);
                lc::MixtureModel model;
                model.m = ds.m;
                for (int j = 0; j < *k; ++j) {
                    lc::MixtureComponent comp;
                    comp.family = lc::family_from_name(*family);
                    comp.fixed_uniform = *uniform_first && j == 0;
                    model.components.push_back(comp);
                }
                const lc::McmcConfig cfg = mcmc->resolve();
                const lc::MixtureResult r = lc::mixture_fit(ds.observations, model, cfg, seed);
                json comps = json::array();
                for (int j = 0; j < *k; ++j) {
                    json cj{{"family", *family},
                            {"fixed_uniform", model.components[static_cast<std::size_t>(j)].fixed_uniform},
                            {"tau", summary_to_json(r.tau_summary[static_cast<std::size_t>(j)])},
                            {"weight", summary_to_json(r.weight_summary[static_cast<std::size_t>(j)])},
                            {"center", circular_to_json(r.center_summary[static_cast<std::size_t>(j)])}};
                    if (*with_draws)
                        cj["draws"] = json{{"tau", r.tau[static_cast<std::size_t>(j)]},
                                           {"t", r.t[static_cast<std::size_t>(j)]},
                                           {"weight", r.weight[static_cast<std::size_t>(j)]}};
                    comps.push_back(std::move(cj));
                }
                json rep = envelope("mixture", seed,
                                    {{"family", *family},
                                     {"m", ds.m},
                                     {"K", *k},
                                     {"uniform_first", *uniform_first},
                                     {"mcmc", mcmc->to_json(cfg)}});
                rep["result"] = json{{"components", comps},
                                     {"acceptance", {{"tau", r.accept_tau}, {"t", r.accept_t}}},
                                     {"tuning_warning", r.tuning_warning}};
                emit(rep, out_path);
            };
        });
    }

    // -------------------------------------------------------- divergence-scan
    {
        auto* cmd = app.add_subcommand("divergence-scan",
                                       "max KL/L1/L2 over moment-matched parameter grids");
        auto fam1 = std::make_shared<std::string>("cdwc");
        auto fam2 = std::make_shared<std::string>("cdvm");
        auto m = std::make_shared<int>(10);
        auto grid_max = std::make_shared<double>(0.995);
        auto grid_step = std::make_shared<double>(0.001);
        auto csv = std::make_shared<std::string>();
        cmd->add_option("--fam1", *fam1, "first family (cdwc, cdvm, cdwn)");
        cmd->add_option("--fam2", *fam2, "base family (cdwc, cdvm, cdwn)");
        cmd->add_option("--m", *m, "lattice size")->required();
        cmd->add_option("--grid-max", *grid_max, "rho_w grid cap (at most 0.995)");
        cmd->add_option("--grid-step", *grid_step, "rho_w grid step");
        cmd->add_option("--grid-csv", *csv, "write rho_w,kl,l1,l2 rows for the whole grid");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->callback([&, fam1, fam2, m, grid_max, grid_step, csv]() {
            action = [&, fam1, fam2, m, grid_max, grid_step, csv]() {
                const lc::Family f1 = lc::family_from_name(*fam1);
                const lc::Family f2 = lc::family_from_name(*fam2);
                if (!csv->empty()) {
                    std::ostringstream body;
                    body << "rho_w,kl,l1,l2\n";
                    for (const auto& row : lc::divergence_grid(f1, f2, *m, *grid_max, *grid_step))
                        body << row.rho_w << "," << row.kl << "," << row.l1 << "," << row.l2
                             << "\n";
                    write_text(*csv, body.str());
                }
                const lc::ScanResult r = lc::max_divergence_scan(f1, f2, *m, *grid_max, *grid_step);
                const auto entry = [](const lc::ScanResult::Entry& e) {
                    return json{{"max", e.value}, {"rho_w", e.argmax_rho_w}, {"at_cap", e.at_cap}};
                };
                json rep = envelope("divergence-scan", seed,
                                    {{"fam1", *fam1},
                                     {"fam2", *fam2},
                                     {"m", *m},
                                     {"grid_max", *grid_max},
                                     {"grid_step", *grid_step}});
                rep["result"] =
                    json{{"kl", entry(r.kl)}, {"l1", entry(r.l1)}, {"l2", entry(r.l2)}};
                emit(rep, out_path);
            };
        });
    }

    // -------------------------------------------------------------- sheppard
    {
        auto* cmd = app.add_subcommand("sheppard",
                                       "binned trigonometric moments and Sheppard multipliers");
        auto rho = std::make_shared<double>(0.5);
        auto m_list = std::make_shared<std::string>("3,5,10,15,20,30,50,100,500");
        auto csv = std::make_shared<std::string>();
        cmd->add_option("--rho", *rho, "wrapped Cauchy concentration");
        cmd->add_option("--m-list", *m_list, "comma-separated lattice sizes");
        cmd->add_option("--csv", *csv, "write the table as CSV");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->callback([&, rho, m_list, csv]() {
            action = [&, rho, m_list, csv]() {
                std::vector<int> ms;
                std::stringstream ss(*m_list);
                std::string token;
                while (std::getline(ss, token, ',')) ms.push_back(std::stoi(token));
                const auto rows = lc::sheppard_report(*rho, ms);
                json arr = json::array();
                std::ostringstream body;
                body << "m,mdwc_cos1,mdwc_cos2,cdwc_cos1,cdwc_cos2,a1,a2\n";
                for (const auto& r : rows) {
                    arr.push_back(json{{"m", r.m},
                                       {"mdwc_cos1", r.mdwc_cos1},
                                       {"mdwc_cos2", r.mdwc_cos2},
                                       {"cdwc_cos1", r.cdwc_cos1},
                                       {"cdwc_cos2", r.cdwc_cos2},
                                       {"a1", r.sheppard_a1},
                                       {"a2", r.sheppard_a2}});
                    body << r.m << "," << r.mdwc_cos1 << "," << r.mdwc_cos2 << "," << r.cdwc_cos1
                         << "," << r.cdwc_cos2 << "," << r.sheppard_a1 << "," << r.sheppard_a2
                         << "\n";
                }
                if (!csv->empty()) write_text(*csv, body.str());
                json rep = envelope("sheppard", seed, {{"rho", *rho}, {"m_list", *m_list}});
                rep["result"] = json{{"rows", arr}};
                emit(rep, out_path);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cout << json{{"schema", kReportSchema},
                          {"error", {{"type", "usage"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        return 2;
    }

    try {
        action();
    } catch (const lc::data_error& e) {
        std::cout << json{{"schema", kReportSchema},
                          {"error", {{"type", "data"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        return 3;
    } catch (const lc::numeric_error& e) {
        std::cout << json{{"schema", kReportSchema},
                          {"error", {{"type", "numeric"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cout << json{{"schema", kReportSchema},
                          {"error", {{"type", "usage"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        return 2;
    }
    return 0;
}
