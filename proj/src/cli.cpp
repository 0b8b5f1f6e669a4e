#include "tingley/cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tingley/engine.hpp"
#include "tingley/suite.hpp"

namespace tingley {

namespace {

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(std::string(what) + ": expected an unsigned integer, got '" +
                     text + "'");
  return value;
}

int parse_int(const std::string& text, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(std::string(what) + ": expected an integer, got '" + text +
                     "'");
  return value;
}

double parse_double(const std::string& text, const char* what) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() ||
      !std::isfinite(value))
    throw ParseError(std::string(what) + ": expected a number, got '" + text +
                     "'");
  return value;
}

PointSpacePtr seq_space(const std::string& prefix, int size) {
  std::vector<std::string> pts(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) pts[i] = prefix + std::to_string(i);
  return make_space(std::move(pts));
}

BundlePtr seq_bundle(int n, const std::string& prefix, int orbits) {
  std::vector<std::string> base(static_cast<std::size_t>(orbits));
  for (int i = 0; i < orbits; ++i) base[i] = prefix + std::to_string(i);
  return make_bundle(n, std::move(base));
}

// Writes to --out when set, otherwise to the stream; missing directories or
// unwritable paths surface as ParseError -> exit 2.
void write_output(const RunConfig& cfg, const std::string& text,
                  std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ParseError("cannot open output file '" + cfg.out + "'");
  f << text;
  if (!f) throw ParseError("cannot write output file '" + cfg.out + "'");
}

void flatten_text(const Json& j, const std::string& prefix,
                  std::ostringstream& os) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten_text(value, name, os);
    } else if (value.is_string()) {
      os << name << " " << value.get<std::string>() << "\n";
    } else {
      os << name << " " << value.dump() << "\n";
    }
  }
}

void emit_report(const RunConfig& cfg, const Json& report, std::ostream& out) {
  if (cfg.format == "text") {
    std::ostringstream os;
    flatten_text(report, "", os);
    write_output(cfg, os.str(), out);
  } else {
    write_output(cfg, report.dump(2) + "\n", out);
  }
}

std::string read_instance_text(const RunConfig& cfg, std::istream& in) {
  if (!cfg.in.empty()) {
    std::ifstream f(cfg.in);
    if (!f) throw ParseError("cannot open input file '" + cfg.in + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json inconsistency_report(int section, const OracleInconsistent& e,
                          std::uint64_t seed) {
  Json j;
  j["section"] = section;
  j["ok"] = false;
  j["error"] = e.what();
  j["residual"] = e.residual;
  j["seed"] = seed;
  return j;
}

}  // namespace

RunConfig parse_cli(const std::vector<std::string>& args) {
  if (args.empty())
    throw ParseError("usage: tingley <gen|reconstruct|suite> [flags]");
  RunConfig cfg;
  cfg.command = args[0];
  if (cfg.command != "gen" && cfg.command != "reconstruct" &&
      cfg.command != "suite")
    throw ParseError("unknown command '" + cfg.command +
                     "' (expected gen, reconstruct, or suite)");

  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& flag = args[i];
    auto next = [&]() -> const std::string& {
      if (i + 1 >= args.size())
        throw ParseError("flag " + flag + " needs a value");
      return args[++i];
    };
    if (flag == "--section") {
      cfg.section = parse_int(next(), "--section");
      if (cfg.section != 2 && cfg.section != 3)
        throw ParseError("--section must be 2 or 3");
    } else if (flag == "--seed") {
      cfg.seed = parse_u64(next(), "--seed");
      cfg.seed_given = true;
    } else if (flag == "--tol") {
      cfg.tol = parse_double(next(), "--tol");
      if (!(cfg.tol > 0.0)) throw ParseError("--tol must be positive");
    } else if (flag == "--probes") {
      cfg.probes = parse_int(next(), "--probes");
      if (cfg.probes <= 0 || cfg.probes % 4 != 0)
        throw ParseError("--probes must be a positive multiple of 4");
    } else if (flag == "--samples") {
      cfg.samples = parse_int(next(), "--samples");
      if (cfg.samples <= 0) throw ParseError("--samples must be positive");
    } else if (flag == "--size") {
      cfg.size = parse_int(next(), "--size");
      if (cfg.size < 1) throw ParseError("--size must be at least 1");
    } else if (flag == "--n") {
      cfg.n = parse_int(next(), "--n");
      if (cfg.n < 1) throw ParseError("--n must be at least 1");
    } else if (flag == "--orbits") {
      cfg.orbits = parse_int(next(), "--orbits");
      if (cfg.orbits < 1) throw ParseError("--orbits must be at least 1");
    } else if (flag == "--trials") {
      cfg.trials = parse_int(next(), "--trials");
      if (cfg.trials < 1) throw ParseError("--trials must be at least 1");
    } else if (flag == "--format") {
      cfg.format = next();
      if (cfg.format != "json" && cfg.format != "text")
        throw ParseError("--format must be json or text");
    } else if (flag == "--out") {
      cfg.out = next();
    } else if (flag == "--in") {
      cfg.in = next();
    } else if (flag == "--perturb") {
      const std::string& spec = next();
      const auto colon = spec.find(':');
      if (colon == std::string::npos || colon == 0)
        throw ParseError("--perturb expects point:magnitude");
      const double mag =
          parse_double(spec.substr(colon + 1), "--perturb magnitude");
      if (!(mag > 0.0))
        throw ParseError("--perturb magnitude must be positive");
      cfg.perturb = {spec.substr(0, colon), mag};
    } else {
      throw ParseError("unknown flag '" + flag + "'");
    }
  }

  if (!cfg.seed_given) {
    if (const char* env = std::getenv("TINGLEY_LAB_SEED")) {
      std::uint64_t value = 0;
      const std::string text(env);
      auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec == std::errc() && ptr == text.data() + text.size() &&
          !text.empty())
        cfg.seed = value;
    }
  }
  return cfg;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Json j;
    if (cfg.section == 2) {
      auto spec = random_scalar_spec(seq_space("x", cfg.size),
                                     seq_space("y", cfg.size), cfg.seed);
      j = to_json(spec);
    } else {
      if (cfg.n < 4 || cfg.n % 4 != 0) {
        err << "--n must be a positive multiple of 4 for section 3\n";
        return kBadInput;
      }
      auto spec = random_bundle_spec(seq_bundle(cfg.n, "a", cfg.orbits),
                                     seq_bundle(cfg.n, "b", cfg.orbits),
                                     cfg.seed);
      j = to_json(spec);
    }
    j["seed"] = cfg.seed;
    write_output(cfg, j.dump(2) + "\n", out);
    return kOk;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kBadInput;
  }
}

int cmd_reconstruct(const RunConfig& cfg, std::istream& in, std::ostream& out,
                    std::ostream& err) {
  Json inst;
  try {
    inst = Json::parse(read_instance_text(cfg, in));
  } catch (const std::exception& e) {
    err << "instance is not valid JSON: " << e.what() << "\n";
    return kBadInput;
  }
  const int section = inst.is_object() ? inst.value("section", 0) : 0;

  try {
    if (section == 2) {
      auto spec = scalar_spec_from_json(inst);
      auto oracle = build_oracle(spec);
      if (cfg.perturb) {
        const auto& [point, mag] = *cfg.perturb;
        if (!spec.domain->contains(point)) {
          err << "perturbation point '" << point
              << "' is not in the instance domain\n";
          return kBadInput;
        }
        oracle = perturb_oracle(
            oracle, ComplexFunction::indicator(spec.domain, point), mag);
      }
      try {
        auto rec = reconstruct_scalar(oracle, cfg.probes, cfg.samples, cfg.tol,
                                      cfg.seed);
        emit_report(cfg, report_json(rec), out);
        return rec.ok ? kOk : kFlagged;
      } catch (const OracleInconsistent& e) {
        emit_report(cfg, inconsistency_report(2, e, cfg.seed), out);
        return kInconsistent;
      }
    }
    if (section == 3) {
      auto spec = bundle_spec_from_json(inst);
      auto oracle = build_oracle(spec);
      if (cfg.perturb) {
        const auto& [orbit, mag] = *cfg.perturb;
        if (!spec.domain->has_orbit(orbit)) {
          err << "perturbation orbit '" << orbit
              << "' is not in the instance domain\n";
          return kBadInput;
        }
        oracle = perturb_oracle(
            oracle, EquivariantFunction::orbit_indicator(spec.domain, orbit),
            mag);
      }
      try {
        auto rec = reconstruct_bundle(oracle, cfg.probes, cfg.samples, cfg.tol,
                                      cfg.seed);
        emit_report(cfg, report_json(rec), out);
        return rec.ok ? kOk : kFlagged;
      } catch (const OracleInconsistent& e) {
        emit_report(cfg, inconsistency_report(3, e, cfg.seed), out);
        return kInconsistent;
      }
    }
    err << "instance must declare section 2 or section 3\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kBadInput;
  }
}

int cmd_suite(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    SuiteConfig base;
    base.seed = cfg.seed;
    auto scaled = scaled_config(base, cfg.trials / 200.0);

    std::ostringstream text;
    auto emit = [&](const CriterionResult& c) {
      char line[256];
      std::snprintf(line, sizeof line,
                    "[%s] %-22s trials=%-6d failures=%-3d worst=%.3e  %.2fs  %s",
                    c.ok ? "PASS" : "FAIL", c.name.c_str(), c.trials,
                    c.failures, c.worst, c.seconds, c.detail.c_str());
      text << line << "\n";
    };
    auto results = run_acceptance(scaled, emit);

    bool all_ok = true;
    for (const auto& c : results) all_ok = all_ok && c.ok;
    if (cfg.format == "text") {
      write_output(cfg, text.str(), out);
    } else {
      write_output(cfg, to_json(results).dump(2) + "\n", out);
    }
    return all_ok ? kOk : kFlagged;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kBadInput;
  }
}

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  try {
    auto cfg = parse_cli(args);
    if (cfg.command == "gen") return cmd_gen(cfg, out, err);
    if (cfg.command == "reconstruct") return cmd_reconstruct(cfg, in, out, err);
    return cmd_suite(cfg, out, err);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace tingley
