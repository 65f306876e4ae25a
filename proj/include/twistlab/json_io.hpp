#pragma once

#include <string>
#include <vector>

#include "twistlab/disparity.hpp"
#include "twistlab/galois.hpp"
#include "twistlab/markov.hpp"

namespace twistlab::json_io {

/// Parsed form of the disparity input document:
/// {"p": int, "base_parity": "even"|"odd", "statistic": "selmer2"|"twoinf"|"sha",
///  "places": [{"label", "kind", "characters": [{"name", "chi_delta",
///  "norm_cokernel_dim", "sha_term_double", "ramified"}]}]}
struct DisparityInput {
  int p = 2;
  disparity::Parity base_parity = disparity::Parity::even;
  disparity::Statistic statistic = disparity::Statistic::selmer2;
  std::vector<disparity::LocalPlaceDatum> places;
};

DisparityInput parse_disparity_input(const std::string& text);
DisparityInput load_disparity_input(const std::string& path);

/// Report serialized with exact "num/den" strings; deterministic key order.
std::string disparity_report_json(const disparity::DisparityReport& rep);

/// Markov class file:
/// {"p": int, "r": int, "classes": [{"label", "epsilon", "rho": [int...],
///  "weight": "num/den"}], "initial": ["num/den", ...] (optional)}
struct MarkovInput {
  int p = 3;
  int r = 0;
  std::vector<markov::FrobeniusClassDatum> classes;
  markov::MarkovState initial;
};

MarkovInput parse_markov_input(const std::string& text);
MarkovInput load_markov_input(const std::string& path);

std::string markov_run_json(const markov::RunResult& result);

/// Generator file for epsilon classification:
/// {"p": int, "dim": int, "generators": [[row-major ints]],
///  "gram": [[...]] (required iff p > 2), "labels": [str] (optional)}
galois::GaloisImage parse_generators_input(const std::string& text, std::size_t cap);
galois::GaloisImage load_generators_input(const std::string& path, std::size_t cap);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace twistlab::json_io
