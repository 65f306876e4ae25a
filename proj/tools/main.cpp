#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "twistlab/errors.hpp"
#include "twistlab/galois.hpp"
#include "twistlab/json_io.hpp"
#include "twistlab/verify.hpp"

namespace {

using namespace twistlab;

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitInputError = 2;

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty())
    std::cout << text;
  else
    json_io::write_file(output_path, text);
}

std::string pick_format(const std::string& requested, const std::string& fallback,
                        std::initializer_list<const char*> allowed) {
  std::string f = requested.empty() ? fallback : requested;
  for (const char* a : allowed)
    if (f == a) return f;
  throw InputError("unsupported --format '" + f + "' for this subcommand");
}

int cmd_verify(const std::string& suite, int dim, bool serial, const std::string& format,
               const std::string& output_path) {
  auto reports = verify::run_suite(suite, dim, serial ? Exec::serial : Exec::parallel);
  bool ok = verify::all_ok(reports);
  std::string fmt = pick_format(format, "text", {"text", "json"});
  std::ostringstream out;
  if (fmt == "json") {
    nlohmann::json j;
    j["suite"] = suite;
    j["dim"] = dim;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports)
      arr.push_back({{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}});
    j["identities"] = arr;
    j["passed"] = ok;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports)
      out << (r.ok() ? "ok   " : "FAIL ") << r.name << "  cases=" << r.cases
          << " failures=" << r.failures << "\n";
    out << (ok ? "verify passed" : "verify FAILED") << " (suite=" << suite << ", dim=" << dim
        << ")\n";
  }
  emit(out.str(), output_path);
  return ok ? kExitOk : kExitIdentityFailure;
}

struct Classified {
  std::string group_desc;
  bool assumed = false;
  const galois::GaloisImage* gi;
  galois::EpsilonClassification cls;
  std::optional<galois::ThetaResult> theta;
};

std::string classification_text(const Classified& r) {
  std::ostringstream out;
  out << "group: " << r.group_desc;
  if (r.assumed)
    out << " (assumed from the polynomial degree; heuristic — supply generators for an exact "
           "classification)";
  out << "\n";
  out << "order: " << r.gi->group->order() << "  dim: " << r.gi->group->dim()
      << "  p: " << r.gi->p << "\n";

  switch (r.cls.kind) {
    case galois::EpsKind::HomomorphismTrivial:
      out << "epsilon: homomorphism, trivial\n";
      break;
    case galois::EpsKind::HomomorphismNontrivial:
      out << "epsilon: homomorphism, nontrivial; kernel order " << r.cls.kernel.size()
          << " (index 2)\n";
      break;
    case galois::EpsKind::NotHomomorphism:
      out << "epsilon: NOT a homomorphism; witness pair (" << r.cls.witness_pair->first << ", "
          << r.cls.witness_pair->second << ")\n";
      break;
    case galois::EpsKind::TrivialOnSp:
      out << "epsilon: trivial on the multiplier-1 subgroup\n";
      break;
    case galois::EpsKind::NontrivialOnSp:
      out << "epsilon: nontrivial on the multiplier-1 subgroup; witness element "
          << *r.cls.witness_element << "\n";
      break;
  }
  if (r.theta)
    out << "theta-criterion: generates=" << (r.theta->generates ? "true" : "false")
        << " eps_not_hom=" << (r.theta->eps_not_hom ? "true" : "false")
        << (r.theta->generates == r.theta->eps_not_hom ? " (agree)" : " (DISAGREE)") << "\n";
  return out.str();
}

std::string classification_json(const Classified& r) {
  nlohmann::json j;
  j["group"] = r.group_desc;
  j["assumed_group"] = r.assumed;
  j["order"] = r.gi->group->order();
  j["dim"] = r.gi->group->dim();
  j["p"] = r.gi->p;
  switch (r.cls.kind) {
    case galois::EpsKind::HomomorphismTrivial: j["kind"] = "homomorphism_trivial"; break;
    case galois::EpsKind::HomomorphismNontrivial:
      j["kind"] = "homomorphism_nontrivial";
      j["kernel_order"] = r.cls.kernel.size();
      break;
    case galois::EpsKind::NotHomomorphism:
      j["kind"] = "not_homomorphism";
      j["witness_pair"] = {r.cls.witness_pair->first, r.cls.witness_pair->second};
      break;
    case galois::EpsKind::TrivialOnSp: j["kind"] = "trivial_on_sp"; break;
    case galois::EpsKind::NontrivialOnSp:
      j["kind"] = "nontrivial_on_sp";
      j["witness_element"] = *r.cls.witness_element;
      break;
  }
  if (r.theta) {
    j["theta"] = {{"generates", r.theta->generates},
                  {"eps_not_hom", r.theta->eps_not_hom},
                  {"agree", r.theta->generates == r.theta->eps_not_hom}};
  }
  return j.dump(2) + "\n";
}

int cmd_epsilon(const std::string& poly_text, const std::string& input_path, int p,
                int group_override, std::size_t cap, const std::string& format,
                const std::string& output_path) {
  std::optional<galois::GaloisImage> gi;
  Classified r;
  if (!input_path.empty()) {
    gi = json_io::load_generators_input(input_path, cap);
    r.group_desc = "generators from " + input_path;
  } else if (!poly_text.empty()) {
    if (p != 2) throw InputError("epsilon: polynomial source implies p = 2");
    auto f = galois::parse_polynomial(poly_text);
    int n = group_override > 0 ? group_override : f.degree();
    if (n < 5) throw InputError("epsilon: polynomial degree must be at least 5");
    gi = galois::hyperelliptic_rep(n, cap);
    r.assumed = group_override <= 0;
    r.group_desc = "S" + std::to_string(n) + " on the 2-torsion of y^2 = f(x)";
  } else {
    throw InputError("epsilon: give a polynomial or --input generators file");
  }
  r.gi = &*gi;
  r.cls = galois::classify(*gi);
  if (gi->p == 2) r.theta = galois::theta_criterion(*gi);

  std::string fmt = pick_format(format, "text", {"text", "json"});
  emit(fmt == "json" ? classification_json(r) : classification_text(r), output_path);
  return kExitOk;
}

int cmd_disparity(const std::string& input_path, const std::string& output_path, bool no_oracle,
                  std::size_t cap, const std::string& format) {
  auto in = json_io::load_disparity_input(input_path);
  auto rep = disparity::report(in.places, in.p, in.statistic, in.base_parity, !no_oracle, cap);
  std::string fmt = pick_format(format, "json", {"json", "text"});
  if (fmt == "json") {
    emit(json_io::disparity_report_json(rep), output_path);
  } else {
    std::ostringstream out;
    out << "statistic " << disparity::to_string(rep.statistic) << ", base parity "
        << disparity::to_string(rep.base_parity) << "\n";
    for (const auto& pr : rep.places)
      out << "  " << pr.label << ": " << to_frac_string(pr.factor) << "\n";
    out << "product " << to_frac_string(rep.product) << "\n";
    out << "fraction even " << to_frac_string(rep.fraction_even) << ", odd "
        << to_frac_string(rep.fraction_odd) << "\n";
    if (rep.oracle_ran)
      out << "brute-force cross-check: " << (rep.oracle_agrees ? "agrees" : "DISAGREES") << "\n";
    emit(out.str(), output_path);
  }
  if (rep.oracle_ran && !rep.oracle_agrees) return kExitIdentityFailure;
  return kExitOk;
}

int cmd_frobenius(const std::string& poly_text, const std::string& primes_range,
                  std::uint64_t seed, const std::string& output_path, bool serial,
                  const std::string& format) {
  auto f = galois::parse_polynomial(poly_text);
  std::size_t dots = primes_range.find("..");
  if (dots == std::string::npos) throw InputError("frobenius: --primes expects LO..HI");
  std::uint64_t lo = 0, hi = 0;
  try {
    lo = std::stoull(primes_range.substr(0, dots));
    hi = std::stoull(primes_range.substr(dots + 2));
  } catch (const std::exception&) {
    throw InputError("frobenius: --primes expects LO..HI with integer bounds");
  }

  galois::FrobeniusSampler sampler(f, seed);
  auto rows = sampler.sweep(lo, hi, serial ? Exec::serial : Exec::parallel);

  std::string fmt = pick_format(format, "csv", {"csv", "json"});
  std::ostringstream out;
  if (fmt == "csv") {
    out << "prime,cycle_type,epsilon,ramified\n";
    for (const auto& s : rows) {
      out << s.prime << ",";
      if (!s.ramified) out << s.type.dashed();
      out << ",";
      if (!s.ramified && f.degree() >= 5)
        out << galois::epsilon_from_cycle_type(s.type, f.degree());
      out << "," << (s.ramified ? 1 : 0) << "\n";
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : rows) {
      nlohmann::json row;
      row["prime"] = s.prime;
      row["ramified"] = s.ramified;
      if (!s.ramified) {
        row["cycle_type"] = s.type.parts;
        if (f.degree() >= 5)
          row["epsilon"] = galois::epsilon_from_cycle_type(s.type, f.degree());
      }
      arr.push_back(row);
    }
    out << arr.dump(2) << "\n";
  }
  emit(out.str(), output_path);
  return kExitOk;
}

int cmd_markov(const std::string& input_path, int steps, std::uint64_t seed,
               const std::string& output_path, const std::string& format) {
  auto in = json_io::load_markov_input(input_path);
  auto result = markov::markov_run(in.initial, in.classes, steps, seed);
  std::string fmt = pick_format(format, "json", {"json", "text"});
  if (fmt == "json") {
    emit(json_io::markov_run_json(result), output_path);
  } else {
    std::ostringstream out;
    for (std::size_t i = 0; i < result.state.norm_sq_history.size(); ++i)
      out << i << " " << to_frac_string(result.state.norm_sq_history[i]) << "\n";
    out << "decay bound " << (result.decay_bound_held ? "held" : "VIOLATED") << " ("
        << result.eps_minus_draws << " eps=-1 draws)\n";
    emit(out.str(), output_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact algebra of Selmer-rank disparity in quadratic twist families"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for all randomized streams (default 0)");
  bool serial = false;
  app.add_flag("--serial", serial, "run sweep kernels on the serial reference path");
  std::string format;
  app.add_option("--format", format, "output format: json, csv or text (per-command default)");

  auto* verify_cmd = app.add_subcommand("verify", "run the exhaustive identity sweeps");
  verify_cmd->fallthrough();
  std::string suite = "all";
  int dim = 2;
  verify_cmd->add_option("--suite", suite, "quadform|pollatsek|cohomology|all")
      ->check(CLI::IsMember({"quadform", "pollatsek", "cohomology", "all"}));
  verify_cmd->add_option("--dim", dim, "symplectic dimension, 2 or 4");

  auto* eps_cmd = app.add_subcommand("epsilon", "classify the epsilon function of a group");
  eps_cmd->fallthrough();
  std::string eps_poly, eps_input, eps_output;
  int eps_p = 2, eps_group = 0;
  std::size_t cap = gflinalg::kDefaultClosureCap;
  eps_cmd->add_option("poly", eps_poly, "polynomial, e.g. \"x^6+x^4+x+3\"");
  eps_cmd->add_option("--input", eps_input, "generators JSON file");
  eps_cmd->add_option("--p", eps_p, "prime (default 2)");
  eps_cmd->add_option("--group", eps_group, "override: treat the Galois group as S_n");
  eps_cmd->add_option("--cap", cap, "group closure cap");
  eps_cmd->add_option("--output", eps_output, "write the report here instead of stdout");

  auto* disp_cmd = app.add_subcommand("disparity", "exact local-factor disparity report");
  disp_cmd->fallthrough();
  std::string disp_input, disp_output;
  bool no_oracle = false;
  std::size_t disp_cap = 10'000'000;
  disp_cmd->add_option("--input", disp_input, "ledger JSON file")->required();
  disp_cmd->add_option("--output", disp_output, "write the report here instead of stdout");
  disp_cmd->add_flag("--no-oracle", no_oracle, "skip the brute-force cross-check");
  disp_cmd->add_option("--cap", disp_cap, "brute-force enumeration cap");

  auto* frob_cmd = app.add_subcommand("frobenius", "sample Frobenius cycle types");
  frob_cmd->fallthrough();
  std::string frob_poly, frob_primes, frob_output;
  frob_cmd->add_option("poly", frob_poly, "polynomial, e.g. \"x^6+x^4+x+3\"")->required();
  frob_cmd->add_option("--primes", frob_primes, "prime range LO..HI")->required();
  frob_cmd->add_option("--output", frob_output, "write the CSV here instead of stdout");

  auto* markov_cmd = app.add_subcommand("markov", "run the exact-rational norm recurrence");
  markov_cmd->fallthrough();
  std::string markov_input, markov_output;
  int steps = 10;
  markov_cmd->add_option("--input", markov_input, "class file JSON")->required();
  markov_cmd->add_option("--steps", steps, "number of draws");
  markov_cmd->add_option("--output", markov_output,
                         "write the trajectory here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_cmd->parsed()) return cmd_verify(suite, dim, serial, format, "");
    if (eps_cmd->parsed())
      return cmd_epsilon(eps_poly, eps_input, eps_p, eps_group, cap, format, eps_output);
    if (disp_cmd->parsed())
      return cmd_disparity(disp_input, disp_output, no_oracle, disp_cap, format);
    if (frob_cmd->parsed())
      return cmd_frobenius(frob_poly, frob_primes, seed, frob_output, serial, format);
    if (markov_cmd->parsed()) return cmd_markov(markov_input, steps, seed, markov_output, format);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ClosedFormUnavailable& e) {
    std::cerr << "not computable: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
