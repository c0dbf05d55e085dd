// Copyright 2026 The randamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "randamp/cli/cli.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "randamp/attacks/attack_g.h"
#include "randamp/bounds/bounds.h"
#include "randamp/certify/device.h"
#include "randamp/certify/protocol.h"
#include "randamp/chained/chained.h"
#include "randamp/cli/report.h"
#include "randamp/dist/json_io.h"
#include "randamp/ghz/ghz.h"
#include "randamp/sources/bias_rules.h"
#include "randamp/sources/correlated.h"
#include "randamp/util/errors.h"

namespace randamp {
namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
    std::string config;
};

using Cells = std::vector<Cell>;

Cell I(long long v) {
    return static_cast<std::int64_t>(v);
}
Cell R(double v) {
    return v;
}
Cell S(std::string v) {
    return v;
}
Cell B(bool v) {
    return v;
}

long long parse_integer(const std::string &text) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (text.empty() || used != text.size()) {
        throw UsageError("not an integer: '" + text + "'");
    }
    return v;
}

double parse_real(const std::string &text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (text.empty() || used != text.size() || !std::isfinite(v)) {
        throw UsageError("not a number: '" + text + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

// "a..b" (inclusive), "a,b,c" or a single integer.
std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        long long lo = parse_integer(text.substr(0, dots));
        long long hi = parse_integer(text.substr(dots + 2));
        if (lo > hi || hi - lo > 100000) {
            throw UsageError("bad range: '" + text + "'");
        }
        for (long long v = lo; v <= hi; ++v) {
            out.push_back(static_cast<int>(v));
        }
        return out;
    }
    for (const auto &part : split(text, ',')) {
        out.push_back(static_cast<int>(parse_integer(part)));
    }
    return out;
}

// "start:stop:step" (inclusive) or "x,y,z".
std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw UsageError("grid must be start:stop:step, got '" + text + "'");
        }
        double start = parse_real(parts[0]), stop = parse_real(parts[1]), step = parse_real(parts[2]);
        if (step <= 0 || stop < start) {
            throw UsageError("bad grid: '" + text + "'");
        }
        auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 1000000) {
            throw UsageError("grid too large: '" + text + "'");
        }
        for (long long i = 0; i < count; ++i) {
            out.push_back(start + static_cast<double>(i) * step);
        }
        return out;
    }
    for (const auto &part : split(text, ',')) {
        out.push_back(parse_real(part));
    }
    return out;
}

std::uint64_t need_seed(const Globals &g) {
    if (!g.seed) {
        throw UsageError("--seed is required for this command");
    }
    return *g.seed;
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw PreconditionError("cannot read file: " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw PreconditionError("invalid JSON in " + path + ": " + e.what());
    }
}

// Flat JSON object of option values, appended for keys missing from the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    nlohmann::json doc;
    try {
        doc = read_json_file(path);
    } catch (const PreconditionError &e) {
        throw UsageError(e.what());
    }
    if (!doc.is_object()) {
        throw UsageError("config file must hold a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        std::string flag = "--" + key;
        bool present = std::any_of(args.begin(), args.end(), [&](const std::string &a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (present || key == "config") {
            continue;
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                args.push_back(flag);
            }
        } else if (value.is_string()) {
            args.push_back(flag);
            args.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            args.push_back(flag);
            args.push_back(value.dump());
        } else {
            throw UsageError("config value for '" + key + "' must be a string, number or boolean");
        }
    }
    return args;
}

struct Context {
    Globals globals;
    std::ostream *out = nullptr;
    std::ostream *err = nullptr;

    void emit(const Report &report, const std::string &summary) const {
        emit_report(report, parse_format(globals.format), globals.out, *out);
        *err << summary << "\n";
    }
};

using Action = std::function<int(const Context &)>;

struct Leaf {
    CLI::App *app;
    Action action;
};

CLI::App *group(CLI::App &parent, const std::string &name, const std::string &help) {
    CLI::App *g = parent.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
}

CLI::App *leaf(CLI::App &parent, const std::string &name, const std::string &help) {
    CLI::App *c = parent.add_subcommand(name, help);
    c->fallthrough();
    return c;
}

// ---- chained ----

void add_chained(CLI::App &app, std::vector<Leaf> &leaves) {
    CLI::App *g = group(app, "chained", "Chained Bell quantity");
    {
        auto n = std::make_shared<std::string>("2,4,8,16,32,64");
        CLI::App *c = leaf(*g, "quantum", "I_N of the quantum box against the closed form");
        c->add_option("--N", *n, "N values: a..b or a,b,c");
        leaves.push_back({c, [n](const Context &ctx) {
                              Report rep({"N", "I_N", "closed_form", "abs_error"});
                              double worst = 0;
                              for (int v : parse_int_list(*n)) {
                                  double i = chained_value(quantum_chained_box(v), ChainedSettings(v));
                                  double cf = quantum_closed_form(v);
                                  worst = std::max(worst, std::abs(i - cf));
                                  rep.add_row({I(v), R(i), R(cf), R(std::abs(i - cf))});
                              }
                              std::ostringstream s;
                              s << "chained quantum: " << rep.rows().size() << " values, max abs error " << worst;
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
    {
        auto n = std::make_shared<std::string>("2..6");
        CLI::App *c = leaf(*g, "classical", "Exhaustive classical minimum of I_N");
        c->add_option("--N", *n, "N values: a..b or a,b,c");
        leaves.push_back({c, [n](const Context &ctx) {
                              Report rep({"N", "classical_min", "quantum"});
                              for (int v : parse_int_list(*n)) {
                                  auto m = classical_min_chained(v);
                                  rep.add_row({I(v), R(m.value), R(quantum_closed_form(v))});
                              }
                              ctx.emit(rep, "chained classical: " + std::to_string(rep.rows().size()) + " values");
                              return kExitOk;
                          }});
    }
}

// ---- bounds ----

void add_bounds(CLI::App &app, std::vector<Leaf> &leaves) {
    CLI::App *g = group(app, "bounds", "Freedom bound checks and the amplification calculator");
    {
        struct Opts {
            int instances = 500;
            int n = 2;
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "check", "Check D <= I_N/2q on random no-signalling families");
        c->add_option("--instances", o->instances, "number of random families")->check(CLI::PositiveNumber);
        c->add_option("--N", o->n, "settings per side (2 or 3)");
        leaves.push_back({c, [o](const Context &ctx) {
                              std::uint64_t seed = need_seed(ctx.globals);
                              Report rep({"instance", "a", "b", "I_N", "q", "lhs", "rhs", "margin"});
                              std::size_t violations = 0;
                              for (int k = 0; k < o->instances; ++k) {
                                  Rng rng = make_stream(seed, static_cast<std::uint64_t>(k));
                                  WFamily fam = random_no_signalling_family(o->n, rng);
                                  for (const auto &r : lemma1_check(fam)) {
                                      violations += !r.holds();
                                      rep.add_row({I(k), I(r.a), I(r.b), R(r.I_N), R(r.q), R(r.lhs), R(r.rhs),
                                                   R(r.margin)});
                                  }
                              }
                              std::ostringstream s;
                              s << "bounds check: " << o->instances << " families, " << rep.rows().size()
                                << " pairs, " << violations << " violations";
                              ctx.emit(rep, s.str());
                              return violations == 0 ? kExitOk : kExitCheckFailed;
                          }});
    }
    {
        struct Opts {
            std::string epsilon = "0,0.05,0.08,0.09";
            std::string r = "1..10";
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "theorem1", "Amplification bound as a function of r");
        c->add_option("--epsilon", o->epsilon, "epsilon values: start:stop:step or list");
        c->add_option("--r", o->r, "r values: a..b or list");
        leaves.push_back({c, [o](const Context &ctx) {
                              Report rep({"epsilon", "r", "bound", "pre_bound", "base", "decreasing"});
                              for (double e : parse_grid(o->epsilon)) {
                                  for (int r : parse_int_list(o->r)) {
                                      auto b = theorem1_bound(e, r);
                                      double base = theorem1_base(e);
                                      rep.add_row({R(e), I(r), R(b.bound), R(b.pre_bound), R(base), B(base < 1)});
                                  }
                              }
                              std::ostringstream s;
                              s << "bounds theorem1: threshold " << amplification_threshold();
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
    {
        struct Opts {
            double epsilon = 0;
            double target = 0.01;
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "select-r", "Smallest r reaching a target freedom");
        c->add_option("--epsilon", o->epsilon, "source epsilon");
        c->add_option("--target", o->target, "target epsilon'");
        leaves.push_back({c, [o](const Context &ctx) {
                              int r = select_r(o->epsilon, o->target);
                              Report rep({"epsilon", "target", "r", "bound"});
                              rep.add_row({R(o->epsilon), R(o->target), I(r), R(theorem1_bound(o->epsilon, r).bound)});
                              ctx.emit(rep, "bounds select-r: r=" + std::to_string(r));
                              return kExitOk;
                          }});
    }
}

// ---- sources ----

void add_sources(CLI::App &app, std::vector<Leaf> &leaves) {
    CLI::App *g = group(app, "sources", "Santha-Vazirani sources");
    {
        struct Opts {
            std::string rule = "history-parity";
            double epsilon = 0.1;
            int n = 16;
            int r = 2;
            std::size_t w = 0;
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "sample", "Sample bits and their conditional biases");
        c->add_option("--rule", o->rule, "unbiased, constant:<bias>, history-parity, worst-case-pair, balanced-pair");
        c->add_option("--epsilon", o->epsilon, "source epsilon");
        c->add_option("--n", o->n, "number of bits")->check(CLI::PositiveNumber);
        c->add_option("--r", o->r, "bits per setting (pair rules)");
        c->add_option("--w", o->w, "hidden value");
        leaves.push_back({c, [o](const Context &ctx) {
                              Rng rng = make_stream(need_seed(ctx.globals), 0);
                              SVSourceModel model = parse_source(o->rule, o->epsilon, o->r);
                              SVSource src(model, o->w);
                              Report rep({"index", "bit", "bias"});
                              for (int i = 0; i < o->n; ++i) {
                                  int bit = src.next(rng);
                                  rep.add_row({I(i), I(bit), R(src.biases().back())});
                              }
                              ctx.emit(rep, "sources sample: " + std::to_string(o->n) + " bits from " + model.name());
                              return kExitOk;
                          }});
    }
    {
        struct Opts {
            std::string rule = "worst-case-pair";
            double epsilon = 0.25;
            int r = 1;
            std::size_t w = 0;
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "settings", "Exact setting distribution P_{AB|w}");
        c->add_option("--rule", o->rule, "bias rule id");
        c->add_option("--epsilon", o->epsilon, "source epsilon");
        c->add_option("--r", o->r, "bits per setting");
        c->add_option("--w", o->w, "hidden value");
        leaves.push_back({c, [o](const Context &ctx) {
                              SVSourceModel model = parse_source(o->rule, o->epsilon, o->r);
                              PairDist pd = settings_weight(model, o->r, o->w);
                              Report rep({"a", "b", "probability"});
                              for (int i = 0; i < pd.n(); ++i) {
                                  for (int j = 0; j < pd.n(); ++j) {
                                      rep.add_row({I(2 * i), I(2 * j + 1), R(pd(2 * i, 2 * j + 1))});
                                  }
                              }
                              std::ostringstream s;
                              s << "sources settings: min " << pd.min() << ", max " << pd.max();
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
    {
        struct Opts {
            double epsilon = 0.1;
            std::size_t length = 64;
            std::size_t trials = 100000;
            std::string mode = "independent,pairwise,adaptive";
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "extractor", "Inner-product extractor on independent and correlated sources");
        c->add_option("--epsilon", o->epsilon, "source epsilon");
        c->add_option("--length", o->length, "string length")->check(CLI::PositiveNumber);
        c->add_option("--trials", o->trials, "trials")->check(CLI::PositiveNumber);
        c->add_option("--mode", o->mode, "comma list of independent, pairwise, adaptive");
        leaves.push_back({c, [o](const Context &ctx) {
                              std::uint64_t seed = need_seed(ctx.globals);
                              Report rep({"mode", "epsilon", "length", "trials", "p_zero", "deficit", "noise_floor"});
                              for (const auto &mode : split(o->mode, ',')) {
                                  ExtractorDemoResult res;
                                  if (mode == "independent") {
                                      res = independent_inner_product_demo(constant_source(o->epsilon, 0.5 + o->epsilon),
                                                                           history_parity_source(o->epsilon), o->length,
                                                                           o->trials, seed);
                                  } else if (mode == "pairwise") {
                                      res = correlated_inner_product_demo(o->epsilon, Correlation::pairwise, o->length,
                                                                          o->trials, seed);
                                  } else if (mode == "adaptive") {
                                      res = correlated_inner_product_demo(o->epsilon, Correlation::adaptive, o->length,
                                                                          o->trials, seed);
                                  } else {
                                      throw UsageError("unknown extractor mode: " + mode);
                                  }
                                  rep.add_row({S(mode), R(o->epsilon), I(static_cast<long long>(res.length)),
                                               I(static_cast<long long>(res.trials)), R(res.p_zero), R(res.deficit),
                                               R(res.noise_floor)});
                              }
                              ctx.emit(rep, "sources extractor: " + std::to_string(rep.rows().size()) + " modes");
                              return kExitOk;
                          }});
    }
}

// ---- certify ----

struct DeviceChoice {
    DeviceModel device;
    SVSourceModel source;
};

DeviceChoice make_device(const std::string &id, int n, double epsilon, const std::string &source_id) {
    int r = std::countr_zero(static_cast<unsigned>(std::max(n, 1)));
    auto pick_source = [&](const std::string &fallback) {
        return parse_source(source_id.empty() ? fallback : source_id, epsilon, r);
    };
    std::string generic = epsilon == 0 ? "unbiased" : "history-parity";
    if (id == "honest") {
        return {honest_quantum_device(n), pick_source(generic)};
    }
    if (id == "all-equal") {
        return {all_equal_device(n), pick_source(generic)};
    }
    if (id == "attack-g") {
        require(std::has_single_bit(static_cast<unsigned>(n)), "attack-g needs N a power of two");
        AttackG attack = build_attack(r, epsilon);
        SVSourceModel src = source_id.empty() ? attack.source : parse_source(source_id, epsilon, r);
        return {attack_device(attack), src};
    }
    if (id.rfind("custom:", 0) == 0) {
        nlohmann::json doc = read_json_file(id.substr(7));
        std::vector<ConditionalDist> boxes;
        if (doc.contains("boxes")) {
            boxes = w_family_from_json(doc).boxes();
        } else {
            boxes.push_back(conditional_dist_from_json(doc));
        }
        return {DeviceModel::from_family("custom", std::move(boxes)), pick_source(generic)};
    }
    throw UsageError("unknown device: " + id + " (honest, all-equal, attack-g, custom:<file>)");
}

void add_certify(CLI::App &app, std::vector<Leaf> &leaves) {
    CLI::App *g = group(app, "certify", "Certification protocol");
    struct RunOpts {
        int n = 4;
        int m = 0;
        double epsilon = 0;
        std::string device = "honest";
        std::string source;
        std::size_t trials = 1000;
    };
    auto add_run_options = [](CLI::App *c, RunOpts &o) {
        c->add_option("--N", o.n, "settings per side (power of two)");
        c->add_option("--M", o.m, "rounds (default round(N^2.5))");
        c->add_option("--epsilon", o.epsilon, "source epsilon");
        c->add_option("--device", o.device, "honest, all-equal, attack-g or custom:<file>");
        c->add_option("--source", o.source, "bias rule id for the settings source");
        c->add_option("--trials", o.trials, "protocol runs")->check(CLI::PositiveNumber);
    };
    auto params_of = [](const RunOpts &o, const Context &ctx) {
        ProtocolParams p = o.m > 0 ? ProtocolParams::with_rounds(o.n, o.m) : ProtocolParams::standard(o.n);
        if (!p.warning().empty()) {
            *ctx.err << "warning: " << p.warning() << "\n";
        }
        return p;
    };
    {
        auto o = std::make_shared<RunOpts>();
        CLI::App *c = leaf(*g, "run", "Monte Carlo protocol runs");
        add_run_options(c, *o);
        leaves.push_back({c, [o, params_of](const Context &ctx) {
                              std::uint64_t seed = need_seed(ctx.globals);
                              ProtocolParams p = params_of(*o, ctx);
                              DeviceChoice dc = make_device(o->device, o->n, o->epsilon, o->source);
                              auto results = run_trials(p, dc.device, dc.source, {o->trials, seed, {}});
                              Report rep({"trial", "aborted", "reason", "|S|", "violations", "final_bit", "w"});
                              for (std::size_t t = 0; t < results.size(); ++t) {
                                  const auto &r = results[t];
                                  rep.add_row({I(static_cast<long long>(t)), B(r.aborted), S(to_string(r.abort_reason)),
                                               I(static_cast<long long>(r.kept_count)),
                                               I(static_cast<long long>(r.violations)), optional_cell(r.final_bit),
                                               I(static_cast<long long>(r.w))});
                              }
                              AbortEstimate e = summarize_aborts(results);
                              std::ostringstream s;
                              s << "certify run: " << e.trials << " runs, abort rate " << e.rate << " [" << e.ci.low
                                << ", " << e.ci.high << "], mean violations " << e.mean_violations;
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
    {
        auto o = std::make_shared<RunOpts>();
        CLI::App *c = leaf(*g, "freedom", "Freedom deficit of the accepted final bit");
        add_run_options(c, *o);
        leaves.push_back({c, [o, params_of](const Context &ctx) {
                              std::uint64_t seed = need_seed(ctx.globals);
                              ProtocolParams p = params_of(*o, ctx);
                              DeviceChoice dc = make_device(o->device, o->n, o->epsilon, o->source);
                              auto results = run_trials(p, dc.device, dc.source, {o->trials, seed, {}});
                              AbortEstimate a = summarize_aborts(results);
                              FreedomEstimate f = final_bit_freedom(results);
                              Report rep({"N", "M", "device", "trials", "accepted", "abort_rate", "deficit",
                                          "noise_floor"});
                              rep.add_row({I(p.n), I(p.m), S(o->device), I(static_cast<long long>(a.trials)),
                                           I(static_cast<long long>(f.accepted)), R(a.rate), R(f.deficit),
                                           R(f.noise_floor)});
                              std::ostringstream s;
                              s << "certify freedom: deficit " << f.deficit << " over " << f.accepted << " accepted runs";
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
    {
        struct Opts {
            std::string epsilon = "0:0.05:0.0025";
            std::string n = "4,8,16";
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "exponent", "Detection-count scaling exponent");
        c->add_option("--epsilon", o->epsilon, "epsilon values: start:stop:step or list");
        c->add_option("--N", o->n, "N values");
        leaves.push_back({c, [o](const Context &ctx) {
                              Report rep({"epsilon", "N", "M", "I_star", "detection_count", "simplified", "exponent",
                                          "positive"});
                              for (double e : parse_grid(o->epsilon)) {
                                  for (const auto &row : failure_exponent_scan(e, parse_int_list(o->n))) {
                                      rep.add_row({R(e), I(row.n), R(row.m), R(row.i_star), R(row.detection_count),
                                                   R(row.simplified), R(row.exponent), B(row.positive)});
                                  }
                              }
                              std::ostringstream s;
                              s << "certify exponent: sign change at epsilon " << failure_exponent_root();
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
}

// ---- attacks ----

void add_attacks(CLI::App &app, std::vector<Leaf> &leaves) {
    CLI::App *g = group(app, "attacks", "Classical attack on the chained checks");
    {
        struct Opts {
            std::string r = "1..6";
            std::string grid = "0:0.25:0.005";
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "scan", "Observed I of the attack against the quantum value");
        c->add_option("--r", o->r, "r values: a..b or list");
        c->add_option("--epsilon-grid", o->grid, "start:stop:step or list");
        leaves.push_back({c, [o](const Context &ctx) {
                              auto rows = attack_scan(parse_int_list(o->r), parse_grid(o->grid));
                              Report rep({"r", "epsilon", "observed_I", "quantum_I", "threshold", "indistinguishable"});
                              for (const auto &row : rows) {
                                  rep.add_row({I(row.r), R(row.epsilon), R(row.observed_I), R(row.quantum_I),
                                               R(row.threshold), B(row.indistinguishable)});
                              }
                              std::ostringstream s;
                              s << "attacks scan: " << rows.size() << " rows, limit threshold " << limit_threshold();
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
    {
        struct Opts {
            int r = 2;
            double epsilon = 0.1;
            std::size_t rounds = 100000;
            std::string steering = "balanced";
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "simulate", "Monte Carlo observed I under the attack");
        c->add_option("--r", o->r, "bits per setting");
        c->add_option("--epsilon", o->epsilon, "source epsilon");
        c->add_option("--rounds", o->rounds, "rounds")->check(CLI::PositiveNumber);
        c->add_option("--steering", o->steering, "balanced or product");
        leaves.push_back({c, [o](const Context &ctx) {
                              std::uint64_t seed = need_seed(ctx.globals);
                              Steering st;
                              if (o->steering == "balanced") {
                                  st = Steering::balanced;
                              } else if (o->steering == "product") {
                                  st = Steering::product;
                              } else {
                                  throw UsageError("unknown steering: " + o->steering);
                              }
                              AttackG attack = build_attack(o->r, o->epsilon, st);
                              auto est = simulate_observed_I(attack, o->rounds, seed);
                              Report rep({"r", "epsilon", "steering", "rounds", "observed_I", "sigma", "exact",
                                          "closed_form"});
                              rep.add_row({I(o->r), R(o->epsilon), S(o->steering), I(static_cast<long long>(est.rounds)),
                                           R(est.value), R(est.sigma), R(observed_I_exact(attack)),
                                           R(observed_I_closed_form(o->r, o->epsilon))});
                              std::ostringstream s;
                              s << "attacks simulate: I = " << est.value << " +- " << est.sigma;
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
}

// ---- ghz ----

std::string pattern_string(std::uint32_t pattern, int m) {
    std::string s;
    for (int i = 0; i < m; ++i) {
        s += static_cast<char>('0' + ghz_input(pattern, m, i));
    }
    return s;
}

std::string assignment_string(const GhzAssignment &a) {
    std::string s;
    for (const auto &party : a) {
        for (int v : party) {
            s += v > 0 ? '+' : '-';
        }
        s += ' ';
    }
    if (!s.empty()) {
        s.pop_back();
    }
    return s;
}

void add_ghz(CLI::App &app, std::vector<Leaf> &leaves) {
    CLI::App *g = group(app, "ghz", "GHZ relations and detection");
    {
        auto m = std::make_shared<int>(3);
        CLI::App *c = leaf(*g, "enumerate", "Relations and the classical maximum");
        c->add_option("--M", *m, "parties (3..8)");
        leaves.push_back({c, [m](const Context &ctx) {
                              auto best = max_classical_satisfiable(*m);
                              Report rep({"M", "inputs", "parity", "witness_satisfies"});
                              for (const auto &rel : relations(*m)) {
                                  int product = 1;
                                  for (int i = 0; i < *m; ++i) {
                                      product *= best.witness[i][ghz_input(rel.pattern, *m, i)];
                                  }
                                  rep.add_row({I(*m), S(pattern_string(rel.pattern, *m)), I(rel.parity),
                                               B(product == rel.parity)});
                              }
                              std::ostringstream s;
                              s << "ghz enumerate: max satisfiable " << best.count << " of " << best.total
                                << ", witness " << assignment_string(best.witness);
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
    {
        struct Opts {
            double epsilon = 0.4;
            std::size_t trials = 100000;
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "detect", "Detection of every classical assignment under worst-case inputs");
        c->add_option("--epsilon", o->epsilon, "source epsilon");
        c->add_option("--trials", o->trials, "rounds per assignment")->check(CLI::PositiveNumber);
        leaves.push_back({c, [o](const Context &ctx) {
                              std::uint64_t seed = need_seed(ctx.globals);
                              auto rels = relations(3);
                              double bound = detection_probability_lower_bound(o->epsilon);
                              Report rep({"assignment", "satisfied", "worst_case", "lower_bound", "empirical", "sigma"});
                              double worst = 1;
                              for (std::uint64_t code = 0; code < 64; ++code) {
                                  GhzAssignment a = assignment_from_code(3, code);
                                  double exact = worst_case_detection_probability(a, o->epsilon);
                                  auto est = simulate_detection(a, worst_case_input_source(a, o->epsilon), o->trials,
                                                                stream_seed(seed, code));
                                  worst = std::min(worst, est.rate);
                                  rep.add_row({S(assignment_string(a)), I(satisfied_count(a, rels)), R(exact), R(bound),
                                               R(est.rate), R(est.sigma)});
                              }
                              std::ostringstream s;
                              s << "ghz detect: lowest empirical detection " << worst << ", bound " << bound;
                              ctx.emit(rep, s.str());
                              return kExitOk;
                          }});
    }
    {
        struct Opts {
            std::string m = "3..24";
            double epsilon = 0;
            std::size_t trials = 10000;
            std::string adversary = "honest,deterministic-party";
            std::string selection = "uniform";
        };
        auto o = std::make_shared<Opts>();
        CLI::App *c = leaf(*g, "conjecture", "Exploratory selected-bit freedom as M grows");
        c->add_option("--M", o->m, "party counts: a..b or list");
        c->add_option("--epsilon", o->epsilon, "source epsilon");
        c->add_option("--trials", o->trials, "trials per M")->check(CLI::PositiveNumber);
        c->add_option("--adversary", o->adversary, "comma list of honest, deterministic-party");
        c->add_option("--selection", o->selection, "uniform or steered");
        leaves.push_back({c, [o](const Context &ctx) {
                              std::uint64_t seed = need_seed(ctx.globals);
                              GhzSelection sel;
                              if (o->selection == "uniform") {
                                  sel = GhzSelection::uniform;
                              } else if (o->selection == "steered") {
                                  sel = GhzSelection::steered;
                              } else {
                                  throw UsageError("unknown selection: " + o->selection);
                              }
                              Report rep({"M", "adversary", "selection", "epsilon", "trials", "deficit", "noise_floor",
                                          "predicted", "relation_failures"});
                              for (const auto &name : split(o->adversary, ',')) {
                                  GhzAdversary adv;
                                  if (name == "honest") {
                                      adv = GhzAdversary::honest;
                                  } else if (name == "deterministic-party") {
                                      adv = GhzAdversary::deterministic_party;
                                  } else {
                                      throw UsageError("unknown adversary: " + name);
                                  }
                                  for (int m : parse_int_list(o->m)) {
                                      auto row = conjecture1_harness(m, o->epsilon, o->trials,
                                                                     stream_seed(seed, static_cast<std::uint64_t>(m)), adv,
                                                                     sel);
                                      rep.add_row({I(m), S(to_string(adv)), S(to_string(sel)), R(o->epsilon),
                                                   I(static_cast<long long>(row.trials)), R(row.deficit),
                                                   R(row.noise_floor), R(row.predicted),
                                                   I(static_cast<long long>(row.relation_failures))});
                                  }
                              }
                              ctx.emit(rep, "ghz conjecture: exploratory, " + std::to_string(rep.rows().size()) + " rows");
                              return kExitOk;
                          }});
    }
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
    Context ctx;
    ctx.out = &out;
    ctx.err = &err;
    CLI::App app{"Randomness amplification from Santha-Vazirani bits via chained Bell correlations", "randamp"};
    app.require_subcommand(1);
    app.add_option("--seed", ctx.globals.seed, "master seed (required by stochastic commands)");
    app.add_option("--out", ctx.globals.out, "report path (default: stdout)");
    app.add_option("--format", ctx.globals.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", ctx.globals.config, "JSON object of option values");
    std::vector<Leaf> leaves;
    add_chained(app, leaves);
    add_bounds(app, leaves);
    add_sources(app, leaves);
    add_certify(app, leaves);
    add_attacks(app, leaves);
    add_ghz(app, leaves);

    try {
        std::vector<std::string> args = apply_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const Leaf *chosen = nullptr;
    for (const auto &l : leaves) {
        if (l.app->parsed()) {
            chosen = &l;
        }
    }
    if (chosen == nullptr) {
        err << "error: no command given\n";
        return kExitUsage;
    }
    try {
        return chosen->action(ctx);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OutputError &e) {
        err << "error: " << e.what() << "\n";
        return kExitCantCreate;
    } catch (const PreconditionError &e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ContractViolation &e) {
        err << "error: contract violation: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception &e) {
        err << "error: internal: " << e.what() << "\n";
        return kExitInternal;
    }
}

int parse_and_dispatch(int argc, const char *const *argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return parse_and_dispatch(args, std::cout, std::cerr);
}

}  // namespace randamp
