#include "catgen/scenario.hpp"

#include "catgen/analytic.hpp"
#include "catgen/beamsplitter.hpp"
#include "catgen/detection.hpp"
#include "catgen/errors.hpp"
#include "catgen/fock.hpp"
#include "catgen/phasespace.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace catgen {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
    char b[64];
    std::snprintf(b, sizeof(b), "%.17g", v);
    return b;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        int i = std::stoi(v, &used);
        if (trim(v.substr(used)).empty()) return i;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad integer value for " + key + ": '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::string t = trim(v);
    if (t.empty()) return out;
    std::istringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ','))
        out.push_back(parse_double(key, trim(field)));
    return out;
}

std::string join_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    return out;
}

void check_member(const std::string& key, const std::string& v,
                  std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (v == a) return;
    throw ConfigError("unsupported value for " + key + ": '" + v + "'");
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "schema_version") {
            if (parse_int(key, val) != 1)
                throw ConfigError("unsupported schema_version " + val);
        } else if (key == "input.kind") {
            check_member(key, val,
                         {"squeezed_vacuum", "fock", "coherent",
                          "amplitudes"});
            cfg.input_kind = val;
        } else if (key == "input.kappa_magnitude") {
            cfg.kappa_magnitude = parse_double(key, val);
        } else if (key == "input.kappa_phase") {
            cfg.kappa_phase = parse_double(key, val);
        } else if (key == "input.fock_n") {
            cfg.fock_n = parse_int(key, val);
        } else if (key == "input.alpha_magnitude") {
            cfg.alpha_magnitude = parse_double(key, val);
        } else if (key == "input.alpha_phase") {
            cfg.alpha_phase = parse_double(key, val);
        } else if (key == "input.amplitudes_re") {
            cfg.amplitudes_re = parse_list(key, val);
        } else if (key == "input.amplitudes_im") {
            cfg.amplitudes_im = parse_list(key, val);
        } else if (key == "input.n_max") {
            cfg.n_max = (val == "auto") ? -1 : parse_int(key, val);
        } else if (key == "bs.transmittance_sq") {
            cfg.transmittance_sq = parse_double(key, val);
        } else if (key == "bs.phi_t") {
            cfg.phi_t = parse_double(key, val);
        } else if (key == "bs.phi_r") {
            cfg.phi_r = parse_double(key, val);
        } else if (key == "operation.kind") {
            check_member(key, val, {"add", "subtract"});
            cfg.operation_kind = val;
        } else if (key == "operation.count") {
            cfg.operation_count = parse_int(key, val);
        } else if (key == "detector.kind") {
            check_member(key, val, {"ideal", "chopping"});
            cfg.detector_kind = val;
        } else if (key == "detector.channels") {
            cfg.detector_channels = parse_int(key, val);
        } else if (key == "detector.efficiency") {
            cfg.detector_efficiency = parse_double(key, val);
        } else if (key == "detector.coincidences") {
            cfg.detector_coincidences = parse_int(key, val);
        } else if (key == "source.kind") {
            check_member(key, val, {"pure", "binomial"});
            cfg.source_kind = val;
        } else if (key == "source.trials") {
            cfg.source_trials = parse_int(key, val);
        } else if (key == "source.p") {
            cfg.source_p = parse_double(key, val);
        } else if (key == "grid.function") {
            check_member(key, val, {"wigner", "husimi", "quadrature"});
            cfg.grid_function = val;
        } else if (key == "grid.route") {
            check_member(key, val, {"analytic", "numeric"});
            cfg.grid_route = val;
        } else if (key == "grid.x_min") {
            cfg.grid_x_min = parse_double(key, val);
        } else if (key == "grid.x_max") {
            cfg.grid_x_max = parse_double(key, val);
        } else if (key == "grid.p_min") {
            cfg.grid_p_min = parse_double(key, val);
        } else if (key == "grid.p_max") {
            cfg.grid_p_max = parse_double(key, val);
        } else if (key == "grid.n_x") {
            cfg.grid_n_x = parse_int(key, val);
        } else if (key == "grid.n_p") {
            cfg.grid_n_p = parse_int(key, val);
        } else if (key == "compare.tolerance") {
            cfg.compare_tolerance = parse_double(key, val);
        } else if (key == "output.directory") {
            cfg.output_directory = val;
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream o;
    o << "schema_version = 1\n";
    o << "input.kind = " << cfg.input_kind << "\n";
    o << "input.kappa_magnitude = " << fmt(cfg.kappa_magnitude) << "\n";
    o << "input.kappa_phase = " << fmt(cfg.kappa_phase) << "\n";
    o << "input.fock_n = " << cfg.fock_n << "\n";
    o << "input.alpha_magnitude = " << fmt(cfg.alpha_magnitude) << "\n";
    o << "input.alpha_phase = " << fmt(cfg.alpha_phase) << "\n";
    o << "input.amplitudes_re = " << join_list(cfg.amplitudes_re) << "\n";
    o << "input.amplitudes_im = " << join_list(cfg.amplitudes_im) << "\n";
    o << "input.n_max = ";
    if (cfg.n_max < 0)
        o << "auto\n";
    else
        o << cfg.n_max << "\n";
    o << "bs.transmittance_sq = " << fmt(cfg.transmittance_sq) << "\n";
    o << "bs.phi_t = " << fmt(cfg.phi_t) << "\n";
    o << "bs.phi_r = " << fmt(cfg.phi_r) << "\n";
    o << "operation.kind = " << cfg.operation_kind << "\n";
    o << "operation.count = " << cfg.operation_count << "\n";
    o << "detector.kind = " << cfg.detector_kind << "\n";
    o << "detector.channels = " << cfg.detector_channels << "\n";
    o << "detector.efficiency = " << fmt(cfg.detector_efficiency) << "\n";
    o << "detector.coincidences = " << cfg.detector_coincidences << "\n";
    o << "source.kind = " << cfg.source_kind << "\n";
    o << "source.trials = " << cfg.source_trials << "\n";
    o << "source.p = " << fmt(cfg.source_p) << "\n";
    o << "grid.function = " << cfg.grid_function << "\n";
    o << "grid.route = " << cfg.grid_route << "\n";
    o << "grid.x_min = " << fmt(cfg.grid_x_min) << "\n";
    o << "grid.x_max = " << fmt(cfg.grid_x_max) << "\n";
    o << "grid.p_min = " << fmt(cfg.grid_p_min) << "\n";
    o << "grid.p_max = " << fmt(cfg.grid_p_max) << "\n";
    o << "grid.n_x = " << cfg.grid_n_x << "\n";
    o << "grid.n_p = " << cfg.grid_n_p << "\n";
    o << "compare.tolerance = " << fmt(cfg.compare_tolerance) << "\n";
    o << "output.directory = " << cfg.output_directory << "\n";
    return o.str();
}

namespace {

enum class Realism { pure, chop, binom };

struct BuiltScenario {
    FockVector input;      // normalized signal state
    bool squeezed = false; // closed forms available
    SqueezeParam kappa{complexd{0.0, 0.0}};
    BeamSplitterParams bs;
    bool add = false;
    Realism realism = Realism::pure;
};

int coherent_auto_n_max(double mean, int headroom) {
    double logp = -mean; // ln Poisson(0)
    long double cum = std::exp((long double)logp);
    int n = 0;
    while (1.0L - cum > 1e-12L && n < 100000) {
        ++n;
        logp += std::log(mean) - std::log((double)n);
        cum += std::exp((long double)logp);
    }
    return n + headroom + 8;
}

BuiltScenario build_scenario(const ScenarioConfig& cfg) {
    BuiltScenario s;
    s.add = (cfg.operation_kind == "add");
    s.bs = bs_from_transmittance(cfg.transmittance_sq, cfg.phi_t, cfg.phi_r);
    if (cfg.operation_count < 0)
        throw ConfigError("operation.count must be >= 0");

    bool chopping = (cfg.detector_kind == "chopping");
    bool binom = (cfg.source_kind == "binomial");
    if (chopping && binom)
        throw ConfigError("choose either a chopping detector or a binomial "
                          "source, not both");
    if (chopping && s.add)
        throw ConfigError("a chopping detector applies to subtraction only");
    if (binom && !s.add)
        throw ConfigError("a binomial source applies to addition only");
    s.realism = chopping ? Realism::chop
                         : (binom ? Realism::binom : Realism::pure);

    int headroom = std::max({cfg.operation_count, cfg.detector_coincidences,
                             cfg.source_trials});

    if (cfg.input_kind == "squeezed_vacuum") {
        s.squeezed = true;
        s.kappa = SqueezeParam(
            cfg.kappa_magnitude * complexd(std::cos(cfg.kappa_phase),
                                           std::sin(cfg.kappa_phase)));
        int n_max =
            (cfg.n_max >= 0) ? cfg.n_max : auto_n_max(s.kappa, headroom);
        s.input = make_squeezed_vacuum(s.kappa, n_max).state;
    } else if (cfg.input_kind == "fock") {
        if (cfg.fock_n < 0) throw ConfigError("input.fock_n must be >= 0");
        int n_max = (cfg.n_max >= 0)
                        ? cfg.n_max
                        : cfg.fock_n + headroom + 8;
        s.input = make_fock(cfg.fock_n, n_max);
    } else if (cfg.input_kind == "coherent") {
        complexd alpha = cfg.alpha_magnitude *
                         complexd(std::cos(cfg.alpha_phase),
                                  std::sin(cfg.alpha_phase));
        int n_max = (cfg.n_max >= 0)
                        ? cfg.n_max
                        : coherent_auto_n_max(std::norm(alpha), headroom);
        s.input = make_coherent(alpha, n_max);
    } else { // amplitudes
        if (cfg.amplitudes_re.empty())
            throw ConfigError("input.amplitudes_re must not be empty");
        if (!cfg.amplitudes_im.empty() &&
            cfg.amplitudes_im.size() != cfg.amplitudes_re.size())
            throw ConfigError(
                "input.amplitudes_im must match input.amplitudes_re");
        std::vector<complexd> a(cfg.amplitudes_re.size());
        for (size_t i = 0; i < a.size(); ++i)
            a[i] = complexd(cfg.amplitudes_re[i],
                            cfg.amplitudes_im.empty() ? 0.0
                                                      : cfg.amplitudes_im[i]);
        s.input = normalize(FockVector(std::move(a)));
    }

    if (s.realism != Realism::pure && !s.squeezed)
        throw ConfigError("chopping and binomial scenarios need a "
                          "squeezed_vacuum input");
    if (s.realism == Realism::chop) {
        if (cfg.detector_coincidences < 0)
            throw ConfigError("detector.coincidences must be >= 0");
    }
    return s;
}

struct SummaryWriter {
    ordered_json j;
    fs::path dir;

    SummaryWriter(const ScenarioConfig& cfg, const RunOptions& opts) {
        dir = opts.out_dir.empty() ? fs::path(cfg.output_directory)
                                   : fs::path(opts.out_dir);
        fs::create_directories(dir);
        j["command"] = opts.command;
        ordered_json echo;
        std::istringstream canon(serialize_config(cfg));
        std::string line;
        while (std::getline(canon, line)) {
            size_t eq = line.find('=');
            echo[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        j["scenario"] = echo;
        j["probabilities"] = ordered_json::object();
        j["deviations"] = ordered_json::object();
        j["files"] = ordered_json::array();
    }

    fs::path file(const std::string& name) {
        j["files"].push_back(name);
        return dir / name;
    }

    void finish(int code, const std::string& diagnostic) {
        j["exit"] = {{"code", code}, {"diagnostic", diagnostic}};
        std::ofstream out(dir / "summary.json");
        if (!out)
            throw DomainError("cannot write summary.json in " +
                              dir.string());
        out << j.dump(2) << "\n";
    }
};

ConditionalState pure_conditional(const BuiltScenario& s, int count) {
    return s.add ? photon_added_state(s.input, count, s.bs)
                 : photon_subtracted_state(s.input, count, s.bs);
}

MixedConditional build_mixture(const ScenarioConfig& cfg,
                               const BuiltScenario& s) {
    if (s.realism == Realism::chop) {
        ChoppingDetector det(cfg.detector_channels, cfg.detector_efficiency);
        return mixed_subtracted(det, cfg.detector_coincidences, s.kappa,
                                s.bs);
    }
    BinomialSource src(cfg.source_trials, cfg.source_p);
    return mixed_added(src, s.kappa, s.bs);
}

void write_weights_csv(const fs::path& path, const MixedConditional& mix) {
    std::ofstream out(path);
    if (!out)
        throw DomainError("cannot write " + path.string());
    out << "count,weight\n";
    for (size_t i = 0; i < mix.counts.size(); ++i)
        out << mix.counts[i] << "," << fmt(mix.weights[i]) << "\n";
}

int cmd_generate(const ScenarioConfig& cfg, const RunOptions& opts) {
    BuiltScenario s = build_scenario(cfg);
    SummaryWriter sw(cfg, opts);
    if (s.realism == Realism::pure) {
        ConditionalState c = pure_conditional(s, cfg.operation_count);
        write_state_csv(sw.file("state.csv").string(), c.state);
        sw.j["probabilities"]["event"] = c.probability;
    } else {
        MixedConditional mix = build_mixture(cfg, s);
        write_weights_csv(sw.file("weights.csv"), mix);
        for (size_t i = 0; i < mix.counts.size(); ++i) {
            char name[48];
            std::snprintf(name, sizeof(name), "component_%02d.csv",
                          mix.counts[i]);
            write_state_csv(sw.file(name).string(), mix.components[i]);
        }
        sw.j["probabilities"]["detect"] = mix.detect_probability;
        ordered_json w = ordered_json::object();
        for (size_t i = 0; i < mix.counts.size(); ++i)
            w[std::to_string(mix.counts[i])] = mix.weights[i];
        sw.j["probabilities"]["weights"] = w;
    }
    sw.finish(0, "ok");
    return 0;
}

int cmd_probability(const ScenarioConfig& cfg, const RunOptions& opts) {
    BuiltScenario s = build_scenario(cfg);
    SummaryWriter sw(cfg, opts);
    DensityMatrix rho = DensityMatrix::from_pure(s.input);
    int top = std::max(cfg.operation_count, 8);
    std::ofstream out(sw.file("probabilities.csv"));
    out << "count,closed_form,general_form\n";
    ordered_json closed = ordered_json::array();
    ordered_json general = ordered_json::array();
    long double sum_general = 0.0L;
    for (int c = 0; c <= top; ++c) {
        double g = s.add ? event_probability(rho, c, 0, s.bs)
                         : event_probability(rho, 0, c, s.bs);
        sum_general += g;
        general.push_back(g);
        out << c << ",";
        if (s.squeezed) {
            double cf = s.add ? prob_added(c, s.kappa, s.bs)
                              : prob_subtracted(c, s.kappa, s.bs);
            closed.push_back(cf);
            out << fmt(cf);
        }
        out << "," << fmt(g) << "\n";
    }
    sw.j["probabilities"]["closed_form"] = closed;
    sw.j["probabilities"]["general_form"] = general;
    sw.j["probabilities"]["general_sum"] =
        static_cast<double>(sum_general);
    sw.finish(0, "ok");
    return 0;
}

int cmd_detector(const ScenarioConfig& cfg, const RunOptions& opts) {
    BuiltScenario s = build_scenario(cfg);
    if (s.realism != Realism::chop)
        throw ConfigError("the detector command needs a chopping detector "
                          "and a subtraction scenario");
    SummaryWriter sw(cfg, opts);
    ChoppingDetector det(cfg.detector_channels, cfg.detector_efficiency);
    std::vector<double> prior = subtracted_prior(s.kappa, s.bs);
    int m_cut = static_cast<int>(prior.size()) - 1;
    write_response_csv(sw.file("response.csv").string(), det, m_cut);
    PosteriorResult post = posterior(det, cfg.detector_coincidences, prior);
    {
        std::ofstream out(sw.file("posterior.csv"));
        out << "count,weight\n";
        for (size_t m = 0; m < post.weights.size(); ++m)
            out << m << "," << fmt(post.weights[m]) << "\n";
    }
    sw.j["probabilities"]["evidence"] = post.evidence;
    sw.j["probabilities"]["m_cut"] = m_cut;
    sw.finish(0, "ok");
    return 0;
}

std::function<double(double, double)>
route_function(const ScenarioConfig& cfg, const BuiltScenario& s,
               const std::string& route) {
    bool numeric = (route == "numeric");
    if (s.realism == Realism::pure) {
        if (numeric) {
            ConditionalState c = pure_conditional(s, cfg.operation_count);
            DensityMatrix rho = DensityMatrix::from_pure(c.state);
            if (cfg.grid_function == "wigner")
                return [rho](double x, double p) {
                    return wigner_numeric(rho, x, p);
                };
            if (cfg.grid_function == "husimi")
                return [rho](double x, double p) {
                    return husimi_numeric(rho, x, p);
                };
            return [rho](double x, double phi) {
                return quad_dist_numeric(rho, x, phi);
            };
        }
        if (!s.squeezed)
            throw ConfigError("the analytic route needs a squeezed_vacuum "
                              "input");
        CatParams cp(effective_kappa(s.kappa, s.bs), cfg.operation_count,
                     s.add ? CatKind::added : CatKind::subtracted);
        if (cfg.grid_function == "wigner")
            return [cp](double x, double p) { return wigner(cp, x, p); };
        if (cfg.grid_function == "husimi")
            return [cp](double x, double p) { return husimi(cp, x, p); };
        return [cp](double x, double phi) { return quad_dist(cp, x, phi); };
    }
    MixedConditional mix = build_mixture(cfg, s);
    if (numeric) {
        DensityMatrix rho = mix.mixture_density();
        if (cfg.grid_function == "wigner")
            return [rho](double x, double p) {
                return wigner_numeric(rho, x, p);
            };
        if (cfg.grid_function == "husimi")
            return [rho](double x, double p) {
                return husimi_numeric(rho, x, p);
            };
        return [rho](double x, double phi) {
            return quad_dist_numeric(rho, x, phi);
        };
    }
    if (cfg.grid_function == "wigner")
        return [mix](double x, double p) { return mix.wigner_value(x, p); };
    if (cfg.grid_function == "husimi")
        return [mix](double x, double p) { return mix.husimi_value(x, p); };
    return [mix](double x, double phi) { return mix.quad(x, phi); };
}

Grid2D eval_route(const ScenarioConfig& cfg, const BuiltScenario& s,
                  const std::string& route) {
    auto f = route_function(cfg, s, route);
    return eval_grid(f, cfg.grid_x_min, cfg.grid_x_max, cfg.grid_p_min,
                     cfg.grid_p_max, cfg.grid_n_x, cfg.grid_n_p);
}

int cmd_grid(const ScenarioConfig& cfg, const RunOptions& opts) {
    BuiltScenario s = build_scenario(cfg);
    std::string route =
        opts.route_override.empty() ? cfg.grid_route : opts.route_override;
    SummaryWriter sw(cfg, opts);
    Grid2D g = eval_route(cfg, s, route);
    write_grid_csv(sw.file("grid.csv").string(), g);
    sw.j["probabilities"]["grid_sum"] = grid_sum(g);
    sw.j["deviations"]["route"] = route;
    sw.finish(0, "ok");
    return 0;
}

int cmd_compare(const ScenarioConfig& cfg, const RunOptions& opts) {
    BuiltScenario s = build_scenario(cfg);
    double tol = (opts.tolerance_override >= 0.0) ? opts.tolerance_override
                                                  : cfg.compare_tolerance;
    SummaryWriter sw(cfg, opts);
    Grid2D ga = eval_route(cfg, s, "analytic");
    Grid2D gn = eval_route(cfg, s, "numeric");
    double sup = 0.0;
    for (size_t i = 0; i < ga.values.size(); ++i)
        sup = std::max(sup, std::abs(ga.values[i] - gn.values[i]));
    write_grid_csv(sw.file("grid_analytic.csv").string(), ga);
    write_grid_csv(sw.file("grid_numeric.csv").string(), gn);
    sw.j["deviations"]["grid_sup"] = sup;
    sw.j["deviations"]["tolerance"] = tol;
    if (s.realism == Realism::pure && s.squeezed) {
        DensityMatrix rho = DensityMatrix::from_pure(s.input);
        int c = cfg.operation_count;
        double general = s.add ? event_probability(rho, c, 0, s.bs)
                               : event_probability(rho, 0, c, s.bs);
        double closed = s.add ? prob_added(c, s.kappa, s.bs)
                              : prob_subtracted(c, s.kappa, s.bs);
        double rel = (closed != 0.0)
                         ? std::abs(general - closed) / closed
                         : std::abs(general);
        sw.j["probabilities"]["closed_form"] = closed;
        sw.j["probabilities"]["general_form"] = general;
        sw.j["deviations"]["probability_rel"] = rel;
    }
    if (sup > tol) {
        sw.finish(4, "routes deviate beyond tolerance");
        return 4;
    }
    sw.finish(0, "ok");
    return 0;
}

} // namespace

int run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
    if (opts.command == "generate") return cmd_generate(cfg, opts);
    if (opts.command == "probability") return cmd_probability(cfg, opts);
    if (opts.command == "grid") return cmd_grid(cfg, opts);
    if (opts.command == "detector") return cmd_detector(cfg, opts);
    if (opts.command == "compare") return cmd_compare(cfg, opts);
    throw ConfigError("unknown command '" + opts.command + "'");
}

} // namespace catgen
