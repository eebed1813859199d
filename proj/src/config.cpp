#include "ionspec/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace ionspec {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items())
        if (allowed.count(key) == 0U) throw ConfigError(path + "/" + key, "unknown key");
}

const json& member(const json& j, const std::string& path, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(path + "/" + key, "missing required key");
    return *it;
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError(path, "expected a boolean");
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

GridSpec parse_grid(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    reject_unknown(j, path, {"n_a", "dt_a", "n_b", "dt_b"});
    GridSpec g;
    g.n_a = get_int(member(j, path, "n_a"), path + "/n_a");
    g.dt_a = get_number(member(j, path, "dt_a"), path + "/dt_a");
    g.n_b = get_int(member(j, path, "n_b"), path + "/n_b");
    g.dt_b = get_number(member(j, path, "dt_b"), path + "/dt_b");
    if (g.n_a < 1) throw ConfigError(path + "/n_a", "must be >= 1");
    if (g.n_b < 1) throw ConfigError(path + "/n_b", "must be >= 1");
    if (g.dt_a <= 0.0) throw ConfigError(path + "/dt_a", "must be > 0");
    if (g.dt_b <= 0.0) throw ConfigError(path + "/dt_b", "must be > 0");
    return g;
}

WindowSection parse_window(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    reject_unknown(j, path, {"eta_a", "eta_b", "pad_factor"});
    WindowSection w;
    if (j.contains("eta_a")) {
        w.eta_a = get_number(j.at("eta_a"), path + "/eta_a");
        if (*w.eta_a < 0.0) throw ConfigError(path + "/eta_a", "must be >= 0");
    }
    if (j.contains("eta_b")) {
        w.eta_b = get_number(j.at("eta_b"), path + "/eta_b");
        if (*w.eta_b < 0.0) throw ConfigError(path + "/eta_b", "must be >= 0");
    }
    if (j.contains("pad_factor")) {
        w.pad_factor = get_int(j.at("pad_factor"), path + "/pad_factor");
        if (w.pad_factor < 1) throw ConfigError(path + "/pad_factor", "must be >= 1");
    }
    return w;
}

NoiseSpec parse_noise(const json& j, const std::string& path, int n_sites) {
    if (!j.is_array()) throw ConfigError(path, "expected an array");
    NoiseSpec noise;
    int idx = 0;
    for (const auto& entry : j) {
        const std::string epath = path + "/" + std::to_string(idx++);
        if (!entry.is_object()) throw ConfigError(epath, "expected an object");
        reject_unknown(entry, epath, {"kind", "sites", "rate"});
        NoiseChannel channel;
        const std::string kind = get_string(member(entry, epath, "kind"), epath + "/kind");
        if (kind == "phonon_local_dephasing") channel.kind = NoiseKind::PhononLocalDephasing;
        else if (kind == "spin_local_dephasing") channel.kind = NoiseKind::SpinLocalDephasing;
        else if (kind == "spin_collective_dephasing") channel.kind = NoiseKind::SpinCollectiveDephasing;
        else throw ConfigError(epath + "/kind", "unknown noise kind '" + kind + "'");
        const json& sites = member(entry, epath, "sites");
        if (!sites.is_array()) throw ConfigError(epath + "/sites", "expected an array");
        for (const auto& s : sites) {
            const int site = get_int(s, epath + "/sites");
            if (site < 0 || site >= n_sites)
                throw ConfigError(epath + "/sites", "site out of range");
            channel.sites.push_back(site);
        }
        channel.rate = get_number(member(entry, epath, "rate"), epath + "/rate");
        if (channel.rate < 0.0) throw ConfigError(epath + "/rate", "must be >= 0");
        noise.push_back(std::move(channel));
    }
    return noise;
}

std::vector<int> parse_sites(const json& j, const std::string& path, std::size_t count, int n_sites) {
    if (!j.is_array()) throw ConfigError(path, "expected an array");
    if (j.size() != count)
        throw ConfigError(path, "expected " + std::to_string(count) + " pulse sites");
    std::vector<int> sites;
    for (const auto& s : j) {
        const int site = get_int(s, path);
        if (site < 0 || site >= n_sites) throw ConfigError(path, "site out of range (0-based)");
        sites.push_back(site);
    }
    return sites;
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::ChainModes: return "chain-modes";
        case ExperimentKind::Sqc: return "sqc";
        case ExperimentKind::Dqc: return "dqc";
        case ExperimentKind::SpinsLineshape: return "spins-lineshape";
        case ExperimentKind::GateErrorScan: return "gate-error-scan";
    }
    return "?";
}

int ExperimentConfig::cycle_steps() const {
    if (phase_cycle.steps_per_pulse > 0) return phase_cycle.steps_per_pulse;
    return pulse_model == PulseModel::Exact ? 5 : 3;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    const std::string root;
    if (!j.is_object()) throw ConfigError("/", "config must be a JSON object");

    ExperimentConfig cfg;
    reject_unknown(j, root, {"schema_version", "experiment", "output", "seed", "threads", "chain",
                             "ms", "pulses", "spin_pulses", "sites", "noise", "grid", "window",
                             "evaluation", "phase_cycle", "dqc", "panels", "scan_gammas"});

    cfg.schema_version = get_int(member(j, root, "schema_version"), "/schema_version");
    if (cfg.schema_version != 1) throw ConfigError("/schema_version", "unsupported schema version");

    const std::string name = get_string(member(j, root, "experiment"), "/experiment");
    if (name == "chain-modes") cfg.experiment = ExperimentKind::ChainModes;
    else if (name == "sqc") cfg.experiment = ExperimentKind::Sqc;
    else if (name == "dqc") cfg.experiment = ExperimentKind::Dqc;
    else if (name == "spins-lineshape") cfg.experiment = ExperimentKind::SpinsLineshape;
    else if (name == "gate-error-scan") cfg.experiment = ExperimentKind::GateErrorScan;
    else throw ConfigError("/experiment", "unknown experiment '" + name + "'");

    {
        const json& out = member(j, root, "output");
        if (!out.is_object()) throw ConfigError("/output", "expected an object");
        reject_unknown(out, "/output", {"dir", "tag"});
        cfg.output_dir = get_string(member(out, "/output", "dir"), "/output/dir");
        cfg.tag = get_string(member(out, "/output", "tag"), "/output/tag");
        if (cfg.tag.empty() || cfg.tag.find('/') != std::string::npos)
            throw ConfigError("/output/tag", "must be a non-empty name without '/'");
    }
    if (j.contains("seed")) cfg.seed = static_cast<unsigned>(get_int(j.at("seed"), "/seed"));
    if (j.contains("threads")) {
        cfg.threads = get_int(j.at("threads"), "/threads");
        if (cfg.threads < 1) throw ConfigError("/threads", "must be >= 1");
    }

    const bool is_phonon = cfg.experiment == ExperimentKind::ChainModes ||
                           cfg.experiment == ExperimentKind::Sqc ||
                           cfg.experiment == ExperimentKind::Dqc;
    const bool is_spin = !is_phonon;

    if (is_phonon) {
        const json& chain = member(j, root, "chain");
        if (!chain.is_object()) throw ConfigError("/chain", "expected an object");
        reject_unknown(chain, "/chain", {"n_ions", "beta", "anharmonicity", "excitation_cap"});
        cfg.chain.n_ions = get_int(member(chain, "/chain", "n_ions"), "/chain/n_ions");
        if (cfg.chain.n_ions < 1 || cfg.chain.n_ions > 20)
            throw ConfigError("/chain/n_ions", "must be in [1, 20]");
        cfg.chain.beta = get_number(member(chain, "/chain", "beta"), "/chain/beta");
        if (cfg.chain.beta <= 0.0 || cfg.chain.beta > 1.0)
            throw ConfigError("/chain/beta", "must be in (0, 1]");
        if (chain.contains("anharmonicity"))
            cfg.chain.anharmonicity = get_number(chain.at("anharmonicity"), "/chain/anharmonicity");
        if (chain.contains("excitation_cap")) {
            cfg.chain.excitation_cap = get_int(chain.at("excitation_cap"), "/chain/excitation_cap");
            if (cfg.chain.excitation_cap < 1)
                throw ConfigError("/chain/excitation_cap", "must be >= 1");
        }
    } else if (j.contains("chain")) {
        throw ConfigError("/chain", "not valid for spin experiments");
    }

    if (is_spin) {
        if (j.contains("ms")) {
            const json& ms = j.at("ms");
            if (!ms.is_object()) throw ConfigError("/ms", "expected an object");
            reject_unknown(ms, "/ms", {"omega"});
            cfg.ms.omega = get_number(member(ms, "/ms", "omega"), "/ms/omega");
            if (cfg.ms.omega <= 0.0) throw ConfigError("/ms/omega", "must be > 0");
        }
        if (j.contains("spin_pulses")) {
            const json& sp = j.at("spin_pulses");
            if (!sp.is_object()) throw ConfigError("/spin_pulses", "expected an object");
            reject_unknown(sp, "/spin_pulses", {"beta"});
            cfg.spin_pulse_beta = get_number(member(sp, "/spin_pulses", "beta"), "/spin_pulses/beta");
            if (cfg.spin_pulse_beta <= 0.0 || cfg.spin_pulse_beta >= 1.0)
                throw ConfigError("/spin_pulses/beta", "must be in (0, 1)");
        }
    } else if (j.contains("ms") || j.contains("spin_pulses")) {
        throw ConfigError(j.contains("ms") ? "/ms" : "/spin_pulses",
                          "not valid for phonon experiments");
    }

    if (cfg.experiment == ExperimentKind::Sqc || cfg.experiment == ExperimentKind::Dqc) {
        const json& pulses = member(j, root, "pulses");
        if (!pulses.is_object()) throw ConfigError("/pulses", "expected an object");
        reject_unknown(pulses, "/pulses", {"alpha", "model"});
        cfg.pulse_alpha = get_number(member(pulses, "/pulses", "alpha"), "/pulses/alpha");
        if (cfg.pulse_alpha <= 0.0 || cfg.pulse_alpha > 1.0)
            throw ConfigError("/pulses/alpha", "must be in (0, 1]");
        if (pulses.contains("model")) {
            const std::string model = get_string(pulses.at("model"), "/pulses/model");
            if (model == "linearized") cfg.pulse_model = PulseModel::Linearized;
            else if (model == "exact") cfg.pulse_model = PulseModel::Exact;
            else throw ConfigError("/pulses/model", "must be 'linearized' or 'exact'");
        }

        const json& sites = member(j, root, "sites");
        if (!sites.is_object()) throw ConfigError("/sites", "expected an object");
        reject_unknown(sites, "/sites", {"pulses", "readout"});
        const std::size_t n_pulses = cfg.experiment == ExperimentKind::Sqc ? 2 : 4;
        cfg.pulse_sites = parse_sites(member(sites, "/sites", "pulses"), "/sites/pulses", n_pulses,
                                      cfg.chain.n_ions);
        cfg.readout_site = get_int(member(sites, "/sites", "readout"), "/sites/readout");
        if (cfg.readout_site < 0 || cfg.readout_site >= cfg.chain.n_ions)
            throw ConfigError("/sites/readout", "site out of range (0-based)");

        if (j.contains("noise")) cfg.noise = parse_noise(j.at("noise"), "/noise", cfg.chain.n_ions);
        for (const auto& channel : cfg.noise)
            if (channel.kind != NoiseKind::PhononLocalDephasing)
                throw ConfigError("/noise", "phonon experiments take phonon_local_dephasing only");

        cfg.grid = parse_grid(member(j, root, "grid"), "/grid");
        if (j.contains("window")) cfg.window = parse_window(j.at("window"), "/window");

        if (j.contains("evaluation")) {
            const std::string mode = get_string(j.at("evaluation"), "/evaluation");
            if (mode == "direct") cfg.evaluation = EvaluationMode::Direct;
            else if (mode == "phase-cycled") cfg.evaluation = EvaluationMode::PhaseCycled;
            else throw ConfigError("/evaluation", "must be 'direct' or 'phase-cycled'");
        }
        if (j.contains("phase_cycle")) {
            const json& pc = j.at("phase_cycle");
            if (!pc.is_object()) throw ConfigError("/phase_cycle", "expected an object");
            reject_unknown(pc, "/phase_cycle", {"steps_per_pulse", "fixed_last_phase"});
            if (pc.contains("steps_per_pulse")) {
                cfg.phase_cycle.steps_per_pulse =
                    get_int(pc.at("steps_per_pulse"), "/phase_cycle/steps_per_pulse");
                if (cfg.phase_cycle.steps_per_pulse < 3)
                    throw ConfigError("/phase_cycle/steps_per_pulse", "must be >= 3");
            }
            if (pc.contains("fixed_last_phase"))
                cfg.phase_cycle.fixed_last_phase =
                    get_bool(pc.at("fixed_last_phase"), "/phase_cycle/fixed_last_phase");
        }
    }

    if (cfg.experiment == ExperimentKind::Dqc && j.contains("dqc")) {
        const json& dqc = j.at("dqc");
        if (!dqc.is_object()) throw ConfigError("/dqc", "expected an object");
        reject_unknown(dqc, "/dqc", {"variant", "t2", "t4"});
        if (dqc.contains("variant")) {
            const std::string v = get_string(dqc.at("variant"), "/dqc/variant");
            if (v == "sum") cfg.dqc_variant = DqcVariant::Sum;
            else if (v == "1") cfg.dqc_variant = DqcVariant::Dqc1;
            else if (v == "2") cfg.dqc_variant = DqcVariant::Dqc2;
            else if (v == "3") cfg.dqc_variant = DqcVariant::Dqc3;
            else throw ConfigError("/dqc/variant", "must be 'sum', '1', '2' or '3'");
        }
        if (dqc.contains("t2")) {
            cfg.dqc_t2 = get_number(dqc.at("t2"), "/dqc/t2");
            if (cfg.dqc_t2 < 0.0) throw ConfigError("/dqc/t2", "must be >= 0");
        }
        if (dqc.contains("t4")) {
            cfg.dqc_t4 = get_number(dqc.at("t4"), "/dqc/t4");
            if (cfg.dqc_t4 < 0.0) throw ConfigError("/dqc/t4", "must be >= 0");
        }
    } else if (cfg.experiment != ExperimentKind::Dqc && j.contains("dqc")) {
        throw ConfigError("/dqc", "only valid for the dqc experiment");
    }

    if (cfg.experiment == ExperimentKind::SpinsLineshape) {
        const json& panels = member(j, root, "panels");
        if (!panels.is_array() || panels.empty())
            throw ConfigError("/panels", "expected a non-empty array");
        int idx = 0;
        for (const auto& entry : panels) {
            const std::string ppath = "/panels/" + std::to_string(idx++);
            if (!entry.is_object()) throw ConfigError(ppath, "expected an object");
            reject_unknown(entry, ppath, {"noise", "gamma"});
            SpinsPanel panel;
            const std::string noise = get_string(member(entry, ppath, "noise"), ppath + "/noise");
            if (noise == "none") panel.noise = MsNoiseKind::None;
            else if (noise == "local") panel.noise = MsNoiseKind::Local;
            else if (noise == "collective") panel.noise = MsNoiseKind::Collective;
            else throw ConfigError(ppath + "/noise", "must be 'none', 'local' or 'collective'");
            if (entry.contains("gamma")) {
                panel.gamma = get_number(entry.at("gamma"), ppath + "/gamma");
                if (panel.gamma < 0.0) throw ConfigError(ppath + "/gamma", "must be >= 0");
            }
            cfg.panels.push_back(panel);
        }
        cfg.grid = parse_grid(member(j, root, "grid"), "/grid");
        cfg.window.pad_factor = 4;
        if (j.contains("window")) {
            cfg.window = parse_window(j.at("window"), "/window");
        }
        if (j.contains("evaluation")) {
            const std::string mode = get_string(j.at("evaluation"), "/evaluation");
            if (mode == "direct") cfg.evaluation = EvaluationMode::Direct;
            else if (mode == "phase-cycled") cfg.evaluation = EvaluationMode::PhaseCycled;
            else throw ConfigError("/evaluation", "must be 'direct' or 'phase-cycled'");
        }
    } else if (j.contains("panels")) {
        throw ConfigError("/panels", "only valid for the spins-lineshape experiment");
    }

    if (cfg.experiment == ExperimentKind::GateErrorScan) {
        const json& gammas = member(j, root, "scan_gammas");
        if (!gammas.is_array() || gammas.size() < 2)
            throw ConfigError("/scan_gammas", "expected an array of at least two rates");
        for (const auto& g : gammas) {
            const double rate = get_number(g, "/scan_gammas");
            if (rate < 0.0) throw ConfigError("/scan_gammas", "rates must be >= 0");
            cfg.scan_gammas.push_back(rate);
        }
        cfg.grid = parse_grid(member(j, root, "grid"), "/grid");
        cfg.window.pad_factor = 4;
        if (j.contains("window")) cfg.window = parse_window(j.at("window"), "/window");
    } else if (j.contains("scan_gammas")) {
        throw ConfigError("/scan_gammas", "only valid for the gate-error-scan experiment");
    }

    if (cfg.experiment == ExperimentKind::ChainModes) {
        for (const std::string key : {"grid", "window", "evaluation", "phase_cycle", "noise",
                                      "pulses", "sites"})
            if (j.contains(key)) throw ConfigError("/" + key, "not valid for chain-modes");
    }

    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("/", "cannot open config file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("/", std::string("JSON parse error: ") + e.what());
    }
    return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["experiment"] = experiment_name(experiment);
    j["output"] = {{"dir", output_dir.string()}, {"tag", tag}};
    j["seed"] = seed;
    j["threads"] = threads;

    const bool is_phonon = experiment == ExperimentKind::ChainModes ||
                           experiment == ExperimentKind::Sqc || experiment == ExperimentKind::Dqc;
    if (is_phonon) {
        j["chain"] = {{"n_ions", chain.n_ions},
                      {"beta", chain.beta},
                      {"anharmonicity", chain.anharmonicity},
                      {"excitation_cap", chain.excitation_cap}};
    } else {
        j["ms"] = {{"omega", ms.omega}};
        j["spin_pulses"] = {{"beta", spin_pulse_beta}};
    }

    if (experiment == ExperimentKind::Sqc || experiment == ExperimentKind::Dqc) {
        j["pulses"] = {{"alpha", pulse_alpha},
                       {"model", pulse_model == PulseModel::Exact ? "exact" : "linearized"}};
        j["sites"] = {{"pulses", pulse_sites}, {"readout", readout_site}};
        nlohmann::json noise_list = nlohmann::json::array();
        for (const auto& channel : noise)
            noise_list.push_back({{"kind", "phonon_local_dephasing"},
                                  {"sites", channel.sites},
                                  {"rate", channel.rate}});
        j["noise"] = noise_list;
        j["evaluation"] = evaluation == EvaluationMode::Direct ? "direct" : "phase-cycled";
        j["phase_cycle"] = {{"steps_per_pulse", cycle_steps()},
                            {"fixed_last_phase", phase_cycle.fixed_last_phase}};
    }
    if (experiment == ExperimentKind::Dqc) {
        std::string variant = "sum";
        if (dqc_variant == DqcVariant::Dqc1) variant = "1";
        if (dqc_variant == DqcVariant::Dqc2) variant = "2";
        if (dqc_variant == DqcVariant::Dqc3) variant = "3";
        j["dqc"] = {{"variant", variant}, {"t2", dqc_t2}, {"t4", dqc_t4}};
    }
    if (experiment == ExperimentKind::SpinsLineshape) {
        nlohmann::json panel_list = nlohmann::json::array();
        for (const auto& panel : panels) {
            std::string noise = "none";
            if (panel.noise == MsNoiseKind::Local) noise = "local";
            if (panel.noise == MsNoiseKind::Collective) noise = "collective";
            panel_list.push_back({{"noise", noise}, {"gamma", panel.gamma}});
        }
        j["panels"] = panel_list;
        j["evaluation"] = evaluation == EvaluationMode::Direct ? "direct" : "phase-cycled";
    }
    if (experiment == ExperimentKind::GateErrorScan) j["scan_gammas"] = scan_gammas;

    if (experiment != ExperimentKind::ChainModes) {
        j["grid"] = {{"n_a", grid.n_a}, {"dt_a", grid.dt_a}, {"n_b", grid.n_b}, {"dt_b", grid.dt_b}};
        nlohmann::json window_json;
        window_json["eta_a"] = window.eta_a ? nlohmann::json(*window.eta_a)
                                            : nlohmann::json(default_apodization(grid.n_a, grid.dt_a));
        window_json["eta_b"] = window.eta_b ? nlohmann::json(*window.eta_b)
                                            : nlohmann::json(default_apodization(grid.n_b, grid.dt_b));
        window_json["pad_factor"] = window.pad_factor;
        j["window"] = window_json;
    }
    return j;
}

}  // namespace ionspec
