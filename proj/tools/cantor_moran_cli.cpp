// cantor-moran: batch verification of Cantor-Moran measures.
//
// Exit codes: 0 pass, 1 verified failure, 2 undecided (UNKNOWN verdict), 3 input error.

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cantor_moran/cantor_moran.hpp"

using nlohmann::json;
using namespace moran;

namespace {

enum Exit { kPass = 0, kFail = 1, kUnknown = 2, kInput = 3 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string system = "example16";
  std::string alpha = "3/10";
  std::string beta = "7/10";
  std::string out;
  bool timestamp = false;
};

std::vector<Integer> parse_csv_integers(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InputError("empty entry in integer list '" + text + "'");
    out.push_back(parse_integer(item));
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

MoranSystem load_system(const Common& c) {
  if (std::filesystem::exists(c.system)) {
    std::ifstream in(c.system);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InputError(c.system + ": " + e.what());
    }
    return parse_system(doc);
  }
  auto named = named_system(c.system, parse_rational(c.alpha), parse_rational(c.beta));
  if (!named)
    throw InputError("unknown system '" + c.system +
                     "' (use example16, theorem17, consecutive, jorgensen-pedersen or a JSON file)");
  return *named;
}

std::string now_utc() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_text(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + c.out);
  f << text;
}

int emit_report(const Common& c, const std::string& command, json parameters, json results, int code) {
  json report = {{"command", command}, {"parameters", std::move(parameters)}, {"results", std::move(results)}};
  report["status"] = code == kPass ? "pass" : code == kFail ? "fail" : "unknown";
  if (c.timestamp) report["timestamp"] = now_utc();
  write_text(c, report.dump(2) + "\n");
  return code;
}

json system_parameters(const Common& c, const MoranSystem& s) {
  json p = {{"system", c.system}, {"rule", s.name()}, {"params", s.params()}};
  return p;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::converges: return kPass;
    case Verdict::diverges: return kFail;
    default: return kUnknown;
  }
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json integers(const std::vector<Integer>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

json rationals(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-level verification of Cantor-Moran measures"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--system", common.system, "System name or JSON description file")->capture_default_str();
  app.add_option("--alpha", common.alpha, "alpha for the theorem17 system")->capture_default_str();
  app.add_option("--beta", common.beta, "beta for the theorem17 system")->capture_default_str();
  app.add_option("--out", common.out, "Write the report to a file instead of stdout");
  app.add_flag("--timestamp", common.timestamp, "Record the wall-clock time in JSON reports");

  std::function<int()> action;

  // check-hadamard
  auto* hadamard = app.add_subcommand("check-hadamard", "Unitarity of the matrix for (N, B, L)");
  std::string hN, hB, hL;
  hadamard->add_option("--N", hN)->required();
  hadamard->add_option("--B", hB, "comma separated digits")->required();
  hadamard->add_option("--L", hL, "comma separated digits")->required();
  hadamard->callback([&] {
    action = [&] {
      const HadamardTriple t{parse_integer(hN), parse_csv_integers(hB), parse_csv_integers(hL)};
      const bool ok = check_hadamard(t);
      return emit_report(common, "check-hadamard", {{"N", hN}, {"B", integers(t.B)}, {"L", integers(t.L)}},
                         {{"hadamard", ok}, {"gram_deviation", hadamard_gram_deviation(t)}}, ok ? kPass : kFail);
    };
  });

  // converge
  auto* converge = app.add_subcommand("converge", "Convergence series with verdicts");
  std::string criterion = "thm11", radius = "1";
  std::size_t horizon = 20;
  converge->add_option("--criterion", criterion, "thm11 | cor12 | thm13 | three-series | ratio | unbounded")
      ->capture_default_str();
  converge->add_option("--level,--horizon", horizon, "Number of terms")->capture_default_str();
  converge->add_option("--radius", radius, "Truncation radius for three-series")->capture_default_str();
  converge->callback([&] {
    action = [&] {
      const auto sys = load_system(common);
      const auto seq = as_atom_sequence(sys);
      json params = system_parameters(common, sys);
      params["criterion"] = criterion;
      params["horizon"] = horizon;
      std::vector<SeriesReport> reports;
      if (criterion == "thm11") {
        reports.push_back(thm11_report(seq, horizon));
      } else if (criterion == "cor12") {
        reports.push_back(cor12_report(seq, horizon));
      } else if (criterion == "thm13") {
        auto [sq, mean] = thm13_report(seq, horizon);
        reports = {sq, mean};
      } else if (criterion == "three-series") {
        params["radius"] = radius;
        const auto three = three_series_report(seq, parse_rational(radius), horizon);
        reports.assign(three.begin(), three.end());
      } else if (criterion == "ratio") {
        reports.push_back(check_nearly_consecutive(sys, horizon).ratio_series);
      } else if (criterion == "unbounded") {
        reports.push_back(unbounded_support_report(sys, horizon));
      } else {
        throw InputError("unknown criterion '" + criterion + "'");
      }
      json results = json::array();
      int code = kPass;
      for (const auto& r : reports) {
        results.push_back(to_json(r));
        code = std::max(code, verdict_code(r.verdict));
      }
      // a diverging series is a definite answer, not an undecided one
      if (code == kUnknown && std::any_of(reports.begin(), reports.end(),
                                          [](const SeriesReport& r) { return r.verdict == Verdict::diverges; }))
        code = kFail;
      return emit_report(common, "converge", params, results, code);
    };
  });

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Candidate spectrum Lambda_n");
  std::size_t level = 2;
  spectrum->add_option("--level", level)->capture_default_str();
  spectrum->callback([&] {
    action = [&] {
      const auto sys = load_system(common);
      json params = system_parameters(common, sys);
      params["level"] = level;
      try {
        const auto s = spectrum_level(sys, level);
        json digits = json::array();
        for (const auto& d : s.digits) digits.push_back(integers(d));
        return emit_report(common, "spectrum", params,
                           {{"count", s.lambdas.size()}, {"lambdas", integers(s.lambdas)}, {"digits", digits}}, kPass);
      } catch (const SpectrumCollision& e) {
        return emit_report(common, "spectrum", params,
                           {{"collision", to_string(e.lambda)}, {"first", integers(e.first)}, {"second", integers(e.second)}},
                           kFail);
      }
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Exact orthogonality and sampled Parseval check at level n");
  std::size_t samples = 100;
  std::uint64_t seed = 20240601;
  verify->add_option("--level", level)->capture_default_str();
  verify->add_option("--parseval-samples", samples)->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();
  verify->callback([&] {
    action = [&] {
      const auto sys = load_system(common);
      json params = system_parameters(common, sys);
      params["level"] = level;
      params["parseval_samples"] = samples;
      params["seed"] = seed;
      const auto mu = finite_level(sys, level);
      const auto s = spectrum_level(sys, level);
      const auto orth = verify_orthogonality(mu, s);
      json results = {{"atoms", mu.size()}, {"lambdas", s.lambdas.size()}, {"orthogonal", orth.ok},
                      {"pairs_tested", orth.pairs_tested}};
      if (orth.witness) results["witness"] = {to_string(orth.witness->first), to_string(orth.witness->second)};
      const double gram = gram_deviation(mu, s);
      results["gram_deviation"] = gram;
      double parseval = 0.0;
      if (samples > 0) {
        parseval = verify_parseval(mu, s, seeded_frequencies(seed, samples));
        results["parseval_deviation"] = parseval;
      }
      const bool ok = orth.ok && gram < 1e-9 && parseval < 1e-9;
      return emit_report(common, "verify", params, results, ok ? kPass : kFail);
    };
  });

  // equi-positivity
  auto* equi = app.add_subcommand("equi-positivity", "Equi-positivity certificate and tail grid check");
  std::size_t factors = 15, grid = 10'000;
  std::size_t equi_horizon = 20;
  std::string grid_csv;
  equi->add_option("--horizon", equi_horizon)->capture_default_str();
  equi->add_option("--factors", factors, "Factors K of the truncated tail transform")->capture_default_str();
  equi->add_option("--grid", grid, "Grid points over [-2/3, 2/3]")->capture_default_str();
  equi->add_option("--csv", grid_csv, "Write (xi, |nu|, bound) rows at n = n0");
  equi->callback([&] {
    action = [&] {
      const auto sys = load_system(common);
      json params = system_parameters(common, sys);
      params["horizon"] = equi_horizon;
      params["factors"] = factors;
      params["grid"] = grid;
      EquiPositivityCertificate cert;
      try {
        cert = equi_positivity_certificate(sys, equi_horizon, factors, grid);
      } catch (const std::domain_error& e) {
        const auto nc = check_nearly_consecutive(sys, equi_horizon);
        const int code = nc.all_residues_ok() && nc.ratio_series.verdict == Verdict::unknown ? kUnknown : kFail;
        return emit_report(common, "equi-positivity", params, {{"error", e.what()}}, code);
      }
      if (!grid_csv.empty()) {
        const auto xs = uniform_grid(-2.0 / 3.0, 2.0 / 3.0, grid);
        const auto chk = tail_lower_bound_check(sys, cert.n0, factors, xs);
        std::ofstream f(grid_csv, std::ios::binary);
        if (!f) throw InputError("cannot write " + grid_csv);
        f << "xi,nu_abs,bound\n";
        for (std::size_t i = 0; i < xs.size(); ++i)
          f << csv_number(xs[i]) << ',' << csv_number(chk.direct[i]) << ',' << csv_number(chk.bound[i]) << '\n';
      }
      json results = {{"epsilon", cert.epsilon},
                      {"delta", cert.delta},
                      {"n0", cert.n0},
                      {"threshold", n0_threshold()},
                      {"partial_sum_ckbk", cert.partial_sum_ckbk},
                      {"tail_ckbk", cert.tail_ckbk},
                      {"S", cert.S},
                      {"grid_min", cert.grid_min},
                      {"direct_min", cert.direct_min},
                      {"valid", cert.valid},
                      {"k_x", "0 on [0, 1/2], -1 on (1/2, 1)"},
                      {"tail_argument", cert.tail_argument}};
      return emit_report(common, "equi-positivity", params, results, cert.valid ? kPass : kFail);
    };
  });

  // support
  auto* support = app.add_subcommand("support", "Support groups of a factorial-shift system");
  support->add_option("--level", level)->capture_default_str();
  support->callback([&] {
    action = [&] {
      const auto sys = load_system(common);
      json params = system_parameters(common, sys);
      params["level"] = level;
      const auto p = support_partition(sys, level);
      json groups = json::array();
      for (const auto& [S, g] : p.groups)
        groups.push_back({{"levels", S}, {"offset", to_string(g.offset)}, {"mass", to_string(g.mass)},
                          {"atoms", rationals(g.atoms)}});
      const bool ok = p.windows_ok && p.disjoint && p.exhaustive;
      return emit_report(common, "support", params,
                         {{"groups", groups}, {"windows_ok", p.windows_ok}, {"disjoint", p.disjoint},
                          {"exhaustive", p.exhaustive}},
                         ok ? kPass : kFail);
    };
  });

  // dims
  auto* dims = app.add_subcommand("dims", "Hausdorff and packing quotient sequences (CSV)");
  std::size_t dims_horizon = 1000;
  bool unchecked = false;
  dims->add_option("--horizon", dims_horizon)->capture_default_str();
  dims->add_flag("--no-hypotheses", unchecked, "Skip the summability check on 1/b_k");
  dims->callback([&] {
    action = [&] {
      const auto sys = load_system(common);
      const auto [h, p] = dimension_quotients(sys, dims_horizon, !unchecked);
      std::string csv = "k,hausdorff_q,packing_q\n";
      for (std::size_t k = 1; k <= dims_horizon; ++k)
        csv += std::to_string(k) + ',' + csv_number(h.q[k - 1]) + ',' + csv_number(p.q[k - 1]) + '\n';
      write_text(common, csv);
      return static_cast<int>(kPass);
    };
  });

  // construct
  auto* construct = app.add_subcommand("construct", "Emit a theorem17 system description");
  std::string schedule = "factorial-squared", emit;
  std::size_t prefix = 0;
  construct->add_option("--schedule", schedule)->capture_default_str();
  construct->add_option("--emit", emit, "Output file (default: stdout or --out)");
  construct->add_option("--prefix", prefix, "Materialize the first levels")->capture_default_str();
  construct->callback([&] {
    action = [&] {
      if (schedule != "factorial-squared") throw InputError("only the factorial-squared schedule is available");
      const auto sys = build_theorem17_system(parse_rational(common.alpha), parse_rational(common.beta));
      const std::string text = emit_system(sys, prefix).dump(2) + "\n";
      if (!emit.empty()) {
        std::ofstream f(emit, std::ios::binary);
        if (!f) throw InputError("cannot write " + emit);
        f << text;
      } else {
        write_text(common, text);
      }
      return static_cast<int>(kPass);
    };
  });

  // transform-grid
  auto* tgrid = app.add_subcommand("transform-grid", "CSV of mu_n^ on a grid with the mask product bound");
  double xmin = -2.0, xmax = 2.0;
  std::size_t points = 1001;
  tgrid->add_option("--level", level)->capture_default_str();
  tgrid->add_option("--xmin", xmin)->capture_default_str();
  tgrid->add_option("--xmax", xmax)->capture_default_str();
  tgrid->add_option("--points", points)->capture_default_str();
  tgrid->callback([&] {
    action = [&] {
      const auto sys = load_system(common);
      const auto mu = finite_level(sys, level);
      const auto xs = uniform_grid(xmin, xmax, points);
      const auto values = parallel::transform_grid(mu, xs);
      // prod_k max(0, 1 - (b_k pi xi / (N_1...N_k))^2 / 6 - 2 c_k / b_k)
      std::vector<double> bound(xs.size(), 1.0);
      Integer Q = 1;
      for (std::size_t k = 1; k <= level; ++k) {
        Q *= sys.N(k);
        const double inv = 1.0 / to_double(Q);
        const auto b = sys.b(k);
        const auto c = sys.shifted_count(k);
        for (std::size_t i = 0; i < xs.size(); ++i)
          bound[i] *= std::max(0.0, mask_lower_bound(b, c, xs[i] * inv));
      }
      std::string csv = "xi,re,im,abs,bound\n";
      for (std::size_t i = 0; i < xs.size(); ++i)
        csv += csv_number(xs[i]) + ',' + csv_number(values[i].real()) + ',' + csv_number(values[i].imag()) + ',' +
               csv_number(std::abs(values[i])) + ',' + csv_number(bound[i]) + '\n';
      write_text(common, csv);
      return static_cast<int>(kPass);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }
  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const SchemaError& e) {
    std::cerr << "invalid system: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    std::cerr << "not applicable: " << e.what() << '\n';
  } catch (const std::length_error& e) {
    std::cerr << "too large: " << e.what() << '\n';
  }
  return kInput;
}
