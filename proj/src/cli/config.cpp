#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "radonlab/errors.hpp"
#include "radonlab/poly.hpp"
#include "radonlab/rational.hpp"
#include "radonlab/reduce.hpp"
#include "radonlab/regions.hpp"

namespace radonlab::cli {

namespace {

const std::vector<std::string> kCommands = {"region",    "improving", "mean-value", "sharpness",
                                            "transfer",  "lift",      "fractional", "sparse"};

// Options accepted by each subcommand, besides --config, --format and --output.
const std::map<std::string, std::set<std::string>> kAccepted = {
    {"region", {"which", "d", "p", "q", "lambda", "dual"}},
    {"improving", {"poly", "p", "q", "dual", "n", "trials", "seed"}},
    {"mean-value", {"d", "m", "n", "brute-check", "tuple-budget"}},
    {"sharpness", {"poly", "d", "p", "q", "dual", "n", "which"}},
    {"transfer", {"quad", "p", "n", "trials", "seed", "window-budget"}},
    {"lift", {"poly", "n", "trials", "seed", "r", "window-budget"}},
    {"fractional", {"poly", "lambda", "k", "q", "n", "trials", "seed", "window-budget"}},
    {"sparse", {"poly", "p", "q", "nmax", "corpus", "seed", "depth", "window-budget"}},
};

const std::map<std::string, std::string> kSummary = {
    {"region", "check whether an exponent pair lies in a named region"},
    {"improving", "random search for inputs that break an improving bound"},
    {"mean-value", "exact solution counts of the Vinogradov system"},
    {"sharpness", "evaluate the extremal families against closed forms"},
    {"transfer", "compare quadratic averages with their linear model"},
    {"lift", "check the projection lift identity on random inputs"},
    {"fractional", "fractional averages against the dyadic decomposition"},
    {"sparse", "sparse bounds for the maximal function via greedy stopping"},
};

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) throw UsageError("bad integer '" + item + "' in --n");
    out.push_back(v);
  }
  return out;
}

// A JSON config value as the flag text CLI11 would have received.
std::string flag_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + flag_text(e);
    return s;
  }
  return v.dump();
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
}

Rational rational_of(const std::optional<std::string>& s, const char* name) {
  if (!s) throw UsageError(std::string("--") + name + " is required");
  try {
    return Rational::parse(*s);
  } catch (const Error& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

Exponent exponent_of(const std::optional<std::string>& s, const char* name) {
  if (!s) throw UsageError(std::string("--") + name + " is required");
  try {
    return Exponent::parse(*s);
  } catch (const Error& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

}  // namespace

nlohmann::json ExperimentConfig::echo() const {
  nlohmann::json j;
  j["command"] = command;
  auto put = [&](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  put("poly", poly);
  put("p", p);
  put("q", q);
  put("lambda", lambda);
  if (dual) j["dual"] = true;
  put("which", which);
  put("d", d);
  put("m", m);
  if (!n.empty()) j["n"] = n;
  put("trials", trials);
  put("seed", seed);
  put("quad", quad);
  put("nmax", nmax);
  put("corpus", corpus);
  put("k", k);
  put("r", r);
  put("depth", depth);
  if (brute_check) j["brute-check"] = true;
  j["window-budget"] = window_budget;
  j["tuple-budget"] = tuple_budget;
  j["format"] = format;
  return j;
}

ExperimentConfig parse_config(int argc, const char* const* argv, std::string* help) {
  // Split argv into the subcommand and the remaining tokens, and pick up --config.
  std::string command;
  std::vector<std::string> rest;
  std::optional<std::string> config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string tok = argv[i];
    if (command.empty() && std::find(kCommands.begin(), kCommands.end(), tok) != kCommands.end()) {
      command = tok;
    } else if (tok == "--config" && i + 1 < argc) {
      config_path = argv[++i];
    } else if (tok.rfind("--config=", 0) == 0) {
      config_path = tok.substr(9);
    } else {
      rest.push_back(tok);
    }
  }

  // Config entries become flags placed before the command-line ones, so flags win.
  std::vector<std::string> from_config;
  if (config_path) {
    const auto j = load_json(*config_path);
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [raw_key, value] : j.items()) {
      std::string key = raw_key;
      std::replace(key.begin(), key.end(), '_', '-');
      if (key == "command") {
        if (command.empty()) command = value.get<std::string>();
        continue;
      }
      if (value.is_boolean()) {
        if (value.get<bool>()) from_config.push_back("--" + key);
        continue;
      }
      if (value.is_null()) continue;
      from_config.push_back("--" + key);
      from_config.push_back(flag_text(value));
    }
  }

  CLI::App app("radonlab: experiments with discrete polynomial averages", "radonlab");
  app.option_defaults()->take_last();
  app.require_subcommand(0, 1);
  ExperimentConfig c;
  std::string n_list;
  std::string help_text;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : kCommands) {
    CLI::App* s = app.add_subcommand(name, kSummary.at(name));
    subs[name] = s;
    const auto& ok = kAccepted.at(name);
    auto has = [&](const char* key) { return ok.count(key) > 0; };
    if (has("which")) s->add_option("--which", c.which, name == "sharpness" ? "families, e.g. a,b,c" : "region name");
    if (has("poly")) s->add_option("--poly", c.poly, "coefficients c0,c1,...,cd (fractions allowed)");
    if (has("d")) s->add_option("--d", c.d, "dimension");
    if (has("m")) s->add_option("--m", c.m, "moment order");
    if (has("p")) s->add_option("--p", c.p, "exponent p (rational or inf)");
    if (has("q")) s->add_option("--q", c.q, "exponent q (rational or inf)");
    if (has("dual")) s->add_flag("--dual", c.dual, "q = p'");
    if (has("lambda")) s->add_option("--lambda", c.lambda, "lambda (rational)");
    if (has("n")) s->add_option("--n", n_list, "N grid, comma separated and increasing");
    if (has("trials")) s->add_option("--trials", c.trials);
    if (has("seed")) s->add_option("--seed", c.seed);
    if (has("quad")) s->add_option("--quad", c.quad, "a,b,c of ax^2 + bx + c");
    if (has("nmax")) s->add_option("--nmax", c.nmax);
    if (has("corpus")) s->add_option("--corpus", c.corpus);
    if (has("k")) s->add_option("--k", c.k, "truncation K");
    if (has("r")) s->add_option("--r", c.r, "residue r of the lift");
    if (has("depth")) s->add_option("--depth", c.depth, "stopping-time generations");
    if (has("brute-check")) s->add_flag("--brute-check", c.brute_check, "recount J by brute force");
    if (has("tuple-budget")) s->add_option("--tuple-budget", c.tuple_budget);
    if (has("window-budget")) s->add_option("--window-budget", c.window_budget);
    s->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--output", c.output, "write the report here instead of stdout");
    s->add_option("--config", config_path, "JSON file with the same keys as the flags");
  }

  std::vector<std::string> tokens;
  if (!command.empty()) tokens.push_back(command);
  tokens.insert(tokens.end(), from_config.begin(), from_config.end());
  tokens.insert(tokens.end(), rest.begin(), rest.end());
  std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes from the back

  try {
    app.parse(tokens);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = command.empty() ? app.help() : subs.at(command)->help();
    return c;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (command.empty()) throw UsageError("missing subcommand (one of region, improving, mean-value, sharpness, "
                                        "transfer, lift, fractional, sparse)");
  c.command = command;
  if (!n_list.empty()) c.n = parse_list(n_list);
  if (c.format.empty()) c.format = command == "region" ? "json" : "csv";
  validate(c);
  return c;
}

void validate(const ExperimentConfig& c) {
  const std::string& cmd = c.command;
  require(kAccepted.count(cmd) > 0, "unknown command '" + cmd + "'");

  for (std::size_t i = 0; i < c.n.size(); ++i) {
    require(c.n[i] >= 1 && c.n[i] <= kMaxN, "--n values must lie in [1, " + std::to_string(kMaxN) + "]");
    require(i == 0 || c.n[i] > c.n[i - 1], "--n must be strictly increasing");
  }
  if (c.d) require(*c.d >= 1 && *c.d <= kMaxDim, "--d must lie in [1, " + std::to_string(kMaxDim) + "]");
  require(c.window_budget > 0 && c.tuple_budget > 0, "budgets must be positive");
  if (c.trials) require(*c.trials >= 0 && *c.trials <= 100000, "--trials must lie in [0, 100000]");

  auto needs_n = [&] { require(!c.n.empty(), "--n is required"); };
  auto needs_seed = [&] { require(c.seed.has_value(), "--seed is required for randomized commands"); };
  auto needs_poly = [&] {
    require(c.poly.has_value(), "--poly is required");
    try {
      const IntPolynomial P = IntPolynomial::parse(*c.poly);
      require(P.degree() >= 1, "--poly must have degree >= 1");
      require(P.degree() <= kMaxDim, "--poly degree must be <= " + std::to_string(kMaxDim));
    } catch (const Error& e) {
      throw UsageError(std::string("--poly: ") + e.what());
    }
  };
  auto needs_pq = [&](bool q_optional_with_dual) {
    const Exponent p = exponent_of(c.p, "p");
    require(!p.is_infinite() || !c.dual, "--dual needs a finite p > 1");
    if (q_optional_with_dual) {
      require(c.dual != c.q.has_value(), "give exactly one of --q and --dual");
      if (c.q) exponent_of(c.q, "q");
    } else {
      exponent_of(c.q, "q");
    }
  };

  if (cmd == "region") {
    require(c.which.has_value(), "--which is required");
    require(c.p.has_value() && (c.q.has_value() || c.dual), "--p and --q (or --dual) are required");
    try {
      (void)Region::from_name(*c.which, c.d.value_or(2));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    exponent_of(c.p, "p");
    if (c.q) exponent_of(c.q, "q");
    if (c.lambda) rational_of(c.lambda, "lambda");
    if (*c.which == "conj-i") require(c.lambda.has_value(), "--lambda is required for conj-i");
  } else if (cmd == "improving") {
    needs_poly();
    needs_pq(true);
    needs_n();
    needs_seed();
    require(c.trials.has_value() && *c.trials >= 1, "--trials >= 1 is required");
  } else if (cmd == "mean-value") {
    require(c.d.has_value() && c.m.has_value(), "--d and --m are required");
    require(*c.m >= 1 && *c.m <= 8, "--m must lie in [1, 8]");
    needs_n();
  } else if (cmd == "sharpness") {
    require(c.poly.has_value() != c.d.has_value(), "give exactly one of --poly (1D families) and --d (moment curve)");
    if (c.poly) needs_poly();
    needs_pq(true);
    needs_n();
    if (c.which)
      for (const char ch : *c.which)
        require(ch == ',' || std::string(c.poly ? "abc" : "def").find(ch) != std::string::npos,
                std::string("--which: families are ") + (c.poly ? "a, b, c" : "d, e, f") + " here");
  } else if (cmd == "transfer") {
    require(c.quad.has_value(), "--quad a,b,c is required");
    const auto abc = parse_list(*c.quad);
    require(abc.size() == 3, "--quad needs three integers a,b,c");
    require(abc[0] >= 1, "--quad: a must be >= 1");
    require(abc[1] >= 0 && abc[2] >= 0, "--quad: b and c must be >= 0");
    require(abc[0] <= 1000 && abc[1] <= 1000 && abc[2] <= 1000, "--quad: coefficients must be <= 1000");
    if (c.p) {
      const Exponent p = exponent_of(c.p, "p");
      require(p.reciprocal() > Rational(1, 2) && p.reciprocal() <= Rational(1), "--p must lie in [1, 2)");
    }
    needs_n();
    if (c.trials.value_or(0) > 0) needs_seed();
  } else if (cmd == "lift") {
    needs_poly();
    require(IntPolynomial::parse(*c.poly).degree() >= 2, "--poly must have degree >= 2 for the lift");
    needs_n();
    needs_seed();
  } else if (cmd == "fractional") {
    needs_poly();
    const Rational l = rational_of(c.lambda, "lambda");
    require(l > Rational(0) && l < Rational(1), "--lambda must lie in (0, 1)");
    require(c.k.has_value() && *c.k >= 1 && *c.k <= kMaxN, "--k in [1, " + std::to_string(kMaxN) + "] is required");
    exponent_of(c.q, "q");
    for (const auto N : c.n) require(N <= *c.k, "--n values must not exceed --k");
    needs_seed();
  } else if (cmd == "sparse") {
    needs_poly();
    needs_pq(false);
    require(c.nmax.has_value() && *c.nmax >= 1 && *c.nmax <= kMaxN,
            "--nmax in [1, " + std::to_string(kMaxN) + "] is required");
    require(c.corpus.has_value() && *c.corpus >= 1 && *c.corpus <= 100000, "--corpus in [1, 100000] is required");
    if (c.depth) require(*c.depth >= 1 && *c.depth <= 64, "--depth must lie in [1, 64]");
    needs_seed();
  }
}

}  // namespace radonlab::cli
