#include "twistlab/json_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab::json_io {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

// Field access with path-tagged errors.
const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + ": missing field '" + key + "'");
  return *it;
}

int need_int(const json& j, const std::string& key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_number_integer()) throw InputError(path + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string need_str(const json& j, const std::string& key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_string()) throw InputError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

bool need_bool(const json& j, const std::string& key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_boolean()) throw InputError(path + "." + key + ": expected a boolean");
  return v.get<bool>();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
}

DisparityInput parse_disparity_input(const std::string& text) {
  json j = parse_or_throw(text);
  DisparityInput in;
  in.p = need_int(j, "p", "$");
  in.base_parity = disparity::parity_from_string(need_str(j, "base_parity", "$"));
  in.statistic = disparity::statistic_from_string(need_str(j, "statistic", "$"));

  const json& places = need(j, "places", "$");
  if (!places.is_array()) throw InputError("$.places: expected an array");
  for (std::size_t pi = 0; pi < places.size(); ++pi) {
    std::string ppath = "$.places[" + std::to_string(pi) + "]";
    disparity::LocalPlaceDatum place;
    place.label = need_str(places[pi], "label", ppath);
    place.kind = disparity::place_kind_from_string(need_str(places[pi], "kind", ppath));
    const json& chars = need(places[pi], "characters", ppath);
    if (!chars.is_array() || chars.empty())
      throw InputError(ppath + ".characters: expected a nonempty array");
    for (std::size_t ci = 0; ci < chars.size(); ++ci) {
      std::string cpath = ppath + ".characters[" + std::to_string(ci) + "]";
      disparity::LocalCharacterDatum c;
      c.name = need_str(chars[ci], "name", cpath);
      c.chi_delta = need_int(chars[ci], "chi_delta", cpath);
      c.norm_cokernel_dim = need_int(chars[ci], "norm_cokernel_dim", cpath);
      c.sha_term_double = need_int(chars[ci], "sha_term_double", cpath);
      c.ramified = need_bool(chars[ci], "ramified", cpath);
      place.characters.push_back(std::move(c));
    }
    in.places.push_back(std::move(place));
  }
  disparity::validate(in.places, in.p, in.statistic);
  return in;
}

DisparityInput load_disparity_input(const std::string& path) {
  return parse_disparity_input(read_file(path));
}

std::string disparity_report_json(const disparity::DisparityReport& rep) {
  json j;
  j["statistic"] = disparity::to_string(rep.statistic);
  j["base_parity"] = disparity::to_string(rep.base_parity);
  json places = json::array();
  for (const auto& pr : rep.places)
    places.push_back({{"label", pr.label}, {"factor", to_frac_string(pr.factor)}});
  j["places"] = places;
  j["product"] = to_frac_string(rep.product);
  j["fraction_even"] = to_frac_string(rep.fraction_even);
  j["fraction_odd"] = to_frac_string(rep.fraction_odd);
  json oracle;
  oracle["ran"] = rep.oracle_ran;
  if (rep.oracle_ran) {
    oracle["fraction_even"] = to_frac_string(rep.oracle_fraction_even);
    oracle["agrees"] = rep.oracle_agrees;
  }
  j["oracle"] = oracle;
  return j.dump(2) + "\n";
}

MarkovInput parse_markov_input(const std::string& text) {
  json j = parse_or_throw(text);
  MarkovInput in;
  in.p = need_int(j, "p", "$");
  in.r = need_int(j, "r", "$");
  if (in.r < 0 || in.r > 8) throw InputError("$.r: expected 0 <= r <= 8");

  const json& classes = need(j, "classes", "$");
  if (!classes.is_array() || classes.empty())
    throw InputError("$.classes: expected a nonempty array");
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    std::string cpath = "$.classes[" + std::to_string(ci) + "]";
    markov::FrobeniusClassDatum cls;
    cls.label = need_str(classes[ci], "label", cpath);
    cls.epsilon = need_int(classes[ci], "epsilon", cpath);
    const json& rho = need(classes[ci], "rho", cpath);
    if (!rho.is_array()) throw InputError(cpath + ".rho: expected an array");
    for (const json& v : rho) {
      if (!v.is_number_integer()) throw InputError(cpath + ".rho: expected integers");
      cls.rho.push_back(v.get<int>());
    }
    cls.weight = parse_rational(need_str(classes[ci], "weight", cpath));
    in.classes.push_back(std::move(cls));
  }

  if (j.contains("initial")) {
    const json& init = j["initial"];
    if (!init.is_array()) throw InputError("$.initial: expected an array");
    std::vector<Rational> vec;
    for (const json& v : init) {
      if (!v.is_string()) throw InputError("$.initial: expected \"num/den\" strings");
      vec.push_back(parse_rational(v.get<std::string>()));
    }
    in.initial = markov::initial_state(in.p, in.r, std::move(vec));
  } else {
    in.initial = markov::initial_state(in.p, in.r);
  }
  return in;
}

MarkovInput load_markov_input(const std::string& path) {
  return parse_markov_input(read_file(path));
}

std::string markov_run_json(const markov::RunResult& result) {
  json j;
  j["p"] = result.state.p;
  j["r"] = result.state.r;
  j["steps"] = result.draws.size();
  json norms = json::array();
  for (const Rational& v : result.state.norm_sq_history) norms.push_back(to_frac_string(v));
  j["norm_sq"] = norms;
  json draws = json::array();
  for (std::size_t d : result.draws) draws.push_back(d);
  j["draws"] = draws;
  j["eps_minus_draws"] = result.eps_minus_draws;
  j["decay_bound_held"] = result.decay_bound_held;
  json final_vec = json::array();
  for (const Rational& v : result.state.vec) final_vec.push_back(to_frac_string(v));
  j["final"] = final_vec;
  return j.dump(2) + "\n";
}

galois::GaloisImage parse_generators_input(const std::string& text, std::size_t cap) {
  json j = parse_or_throw(text);
  int p = need_int(j, "p", "$");
  int dim = need_int(j, "dim", "$");
  if (dim < 1 || dim > 32) throw InputError("$.dim: expected 1 <= dim <= 32");

  auto parse_matrix = [&](const json& rows, const std::string& path) {
    gflinalg::FpMatrix m(p, dim, dim);
    if (!rows.is_array() || (int)rows.size() != dim)
      throw InputError(path + ": expected " + std::to_string(dim) + " rows");
    for (int r = 0; r < dim; ++r) {
      const json& row = rows[r];
      if (!row.is_array() || (int)row.size() != dim)
        throw InputError(path + ": expected " + std::to_string(dim) + " columns per row");
      for (int c = 0; c < dim; ++c) {
        if (!row[c].is_number_integer()) throw InputError(path + ": expected integer entries");
        m.set(r, c, row[c].get<int>());
      }
    }
    return m;
  };

  const json& gens = need(j, "generators", "$");
  if (!gens.is_array()) throw InputError("$.generators: expected an array");
  std::vector<gflinalg::FpMatrix> mats;
  for (std::size_t i = 0; i < gens.size(); ++i)
    mats.push_back(parse_matrix(gens[i], "$.generators[" + std::to_string(i) + "]"));

  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const json& ls = j["labels"];
    if (!ls.is_array()) throw InputError("$.labels: expected an array");
    for (const json& l : ls) labels.push_back(l.get<std::string>());
  }

  std::optional<gflinalg::FpMatrix> gram;
  if (j.contains("gram")) gram = parse_matrix(j["gram"], "$.gram");
  if (p > 2 && !gram) throw InputError("$.gram: required when p > 2");

  auto group = std::make_shared<const gflinalg::MatrixGroup>(p, dim, std::move(mats),
                                                             std::move(labels), cap);
  return galois::make_galois_image(p, std::move(group), std::move(gram));
}

galois::GaloisImage load_generators_input(const std::string& path, std::size_t cap) {
  return parse_generators_input(read_file(path), cap);
}

}  // namespace twistlab::json_io
