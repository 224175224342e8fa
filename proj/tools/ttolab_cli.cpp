#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ttolab/ttolab.h"

using json = nlohmann::json;

namespace {

enum class Kind { Json, Number, Integer, String };

struct Flag {
  const char* name;
  const char* key;
  Kind kind;
  const char* help;
};

// per-subcommand options, all forwarded as config keys
const std::map<std::string, std::vector<Flag>>& flag_table() {
  static const std::map<std::string, std::vector<Flag>> t = {
      {"kernels",
       {{"--inner", "inner", Kind::Json, "inner function (JSON or file)"},
        {"--lambda", "lambda", Kind::Json, "point or list of points"},
        {"--boundary", "boundary", Kind::Json, "boundary angle or list of angles"},
        {"--kind", "kind", Kind::String, "kernel | normalized_kernel | dq | normalized_dq"}}},
      {"build",
       {{"--inner", "inner", Kind::Json, "inner function"}, {"--symbol", "symbol", Kind::Json, "symbol (JSON or file)"}}},
      {"recover",
       {{"--inner", "inner", Kind::Json, "inner function"},
        {"--table", "table", Kind::Json, "kernel-action table"},
        {"--matrix", "matrix", Kind::Json, "operator matrix"},
        {"--mu", "mu", Kind::Json, "normalisation point"},
        {"--method", "method", Kind::String, "recap | k0"}}},
      {"rank-one",
       {{"--inner", "inner", Kind::Json, "inner function"},
        {"--lambda", "lambda", Kind::Json, "interior point"},
        {"--boundary", "boundary", Kind::Number, "boundary angle"}}},
      {"fejer-split", {{"--N", "N", Kind::Integer, "degree N"}, {"--symbol", "symbol", Kind::Json, "polynomial symbol"}}},
      {"cf-extend", {{"--coeffs", "coeffs", Kind::Json, "Taylor coefficients"}}},
      {"assemble",
       {{"--matrix", "matrix", Kind::Json, "Toeplitz matrix on K_{z^N}"},
        {"--batch", "batch", Kind::Json, "{\"N\": n, \"count\": m} random batch"}}},
      {"transport", {{"--matrix", "matrix", Kind::Json, "matrix"}, {"--alpha", "alpha", Kind::Json, "Blaschke point"}}},
      {"cohn-growth",
       {{"--family", "family", Kind::String, "blaschke | singular | radial"},
        {"--p", "p", Kind::Number, "exponent"},
        {"--zeta", "zeta", Kind::Number, "boundary angle"},
        {"--degrees", "degrees", Kind::Json, "truncation degrees"},
        {"--deficits", "deficits", Kind::Json, "values of 1 - r"}}},
      {"cls-scan",
       {{"--inner", "inner", Kind::Json, "inner function"},
        {"--radii", "radii", Kind::Integer, "radial levels 2^-1 .. 2^-radii"},
        {"--angles", "angles", Kind::Integer, "number of directions"}}},
      {"rkt-scan",
       {{"--inner", "inner", Kind::Json, "singular inner function"},
        {"--s", "s", Kind::Number, "exponent s in (0,1)"},
        {"--lambda", "lambda", Kind::Json, "point or list of points"}}},
      {"counterex",
       {{"--family", "family", Kind::String, "blaschke | singular | tangential"},
        {"--p", "p", Kind::Number, "exponent"},
        {"--K", "K", Kind::Integer, "number of terms"},
        {"--gamma", "gamma", Kind::Number, "tangency exponent"},
        {"--zeta", "zeta", Kind::Number, "boundary angle"},
        {"--degrees", "degrees", Kind::Json, "truncation degrees (check)"}}},
      {"carleson",
       {{"--inner", "inner", Kind::Json, "inner function"},
        {"--measure", "measure", Kind::Json, "{\"atoms\": [...], \"density\": [...]}"},
        {"--trials", "trials", Kind::Integer, "random Rayleigh trials"}}},
  };
  return t;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

// inline JSON, or a path to a JSON file
json json_arg(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const json::parse_error&) {
    return read_json_file(s);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ttolab: truncated Toeplitz operators on model spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<long> grid, budget, seed;
  std::optional<double> tol;
  std::string config_path, output, format, mode;
  app.add_option("--grid", grid, "boundary grid size");
  app.add_option("--tol", tol, "tolerance");
  app.add_option("--budget", budget, "iteration budget");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--mode", mode, "auto | exact | truncated");
  app.add_option("--format", format, "csv | json");
  app.add_option("--config", config_path, "JSON config; its keys override flags");
  app.add_option("-o,--output", output, "output file (default stdout)");
  app.set_version_flag("--version", std::string(ttl_version()));

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  std::string action;
  static const std::map<std::string, std::string> about = {
      {"kernels", "reproducing kernels and difference quotients"},
      {"build", "matrix of A_phi on K_Theta"},
      {"recover", "recover a symbol pair from kernel actions"},
      {"rank-one", "symbol of the rank-one operator k~ (x) k"},
      {"fejer-split", "split a polynomial symbol with Fejer windows"},
      {"cf-extend", "minimal-norm analytic extension of Taylor data"},
      {"assemble", "bounded symbol of a Toeplitz matrix on K_{z^N}"},
      {"transport", "move an operator from K_{z^N} to K_{b_alpha^N}"},
      {"cohn-growth", "kernel L^p growth along r -> 1"},
      {"cls-scan", "sup |k| / ||k||^2 over radial lines"},
      {"rkt-scan", "kernel identities for conj(Theta)^s"},
      {"counterex", "generate or check counterexample families"},
      {"carleson", "Carleson embedding constant of a measure"},
  };
  for (auto& [name, flags] : flag_table()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    subs[name] = sub;
    for (auto& f : flags) sub->add_option(f.name, values[name][f.key], f.help);
    if (name == "counterex") sub->add_option("action", action, "gen | check");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : TTL_ERR_VALIDATION;
  }

  std::string command;
  for (auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  json cfg = json::object();
  try {
    for (auto& f : flag_table().at(command)) {
      if (subs[command]->count(f.name) == 0) continue;
      const std::string& v = values[command][f.key];
      switch (f.kind) {
        case Kind::Json: cfg[f.key] = json_arg(v); break;
        case Kind::Number: cfg[f.key] = std::stod(v); break;
        case Kind::Integer: cfg[f.key] = std::stol(v); break;
        case Kind::String: cfg[f.key] = v; break;
      }
    }
    if (!action.empty()) cfg["action"] = action;
    if (grid) cfg["grid"] = *grid;
    if (tol) cfg["tol"] = *tol;
    if (budget) cfg["budget"] = *budget;
    if (seed) cfg["seed"] = *seed;
    if (!mode.empty()) cfg["mode"] = mode;
    if (!format.empty()) cfg["format"] = format;
    if (!config_path.empty()) {
      json file = read_json_file(config_path);
      if (!file.is_object()) throw std::runtime_error("config file must hold a JSON object");
      for (auto it = file.begin(); it != file.end(); ++it) cfg[it.key()] = it.value();
    }
    if (cfg.contains("output")) {
      if (!cfg["output"].is_string()) throw std::runtime_error("'output' must be a string");
      output = cfg["output"].get<std::string>();
      cfg.erase("output");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return TTL_ERR_VALIDATION;
  }

  char* text = nullptr;
  const int rc = ttl_run(command.c_str(), cfg.dump().c_str(), &text);
  if (rc != TTL_OK) {
    std::cerr << "error: " << ttl_last_error() << "\n";
    return rc;
  }
  std::string out(text);
  ttl_string_free(text);
  if (output.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << output << "\n";
      return TTL_ERR_VALIDATION;
    }
    f << out;
  }
  return 0;
}
