// Serial-reference vs OpenMP timings for the sweep kernels.
#include <chrono>
#include <cstdio>

#include "twistlab/disparity.hpp"
#include "twistlab/galois.hpp"
#include "twistlab/pollatsek.hpp"
#include "twistlab/quadform.hpp"

using namespace twistlab;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_of(F&& fn) {
  auto t0 = Clock::now();
  fn();
  auto t1 = Clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-26s %10.3fs %10.3fs %8.2fx\n", name, serial, parallel, serial / parallel);
}

std::vector<disparity::LocalPlaceDatum> big_ledger() {
  std::vector<disparity::LocalPlaceDatum> places;
  for (int pl = 0; pl < 6; ++pl) {
    disparity::LocalPlaceDatum place;
    place.label = "v" + std::to_string(pl);
    place.kind = disparity::PlaceKind::nonarch_other;
    place.characters.push_back({"1", 1, 0, 0, false});
    for (int c = 1; c < 12; ++c)
      place.characters.push_back({"c" + std::to_string(c), (c % 3 == 0) ? -1 : 1, c % 2,
                                  (c % 5 == 0) ? 1 : 0, true});
    places.push_back(std::move(place));
  }
  return places;  // |Gamma| = 12^6 = 2985984
}

}  // namespace

int main() {
  std::printf("%-26s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

  auto s = quadform::standard_space(4);
  auto sp = quadform::symplectic_group(s);
  auto table = gflinalg::BitGroupTable::build(sp);
  quadform::QuadraticRefinement q{s, 0};
  auto ps = pollatsek::extend_space(s, q);

  row("dickson-homomorphism",
      time_of([&] { quadform::dickson_homomorphism_sweep_serial(s, table); }),
      time_of([&] { quadform::dickson_homomorphism_sweep(s, table); }));

  row("coboundary-identity",
      time_of([&] { pollatsek::coboundary_identity_sweep_serial(ps, table); }),
      time_of([&] { pollatsek::coboundary_identity_sweep(ps, table); }));

  row("phi-homomorphism",
      time_of([&] { pollatsek::phi_homomorphism_sweep_serial(ps, table); }),
      time_of([&] { pollatsek::phi_homomorphism_sweep(ps, table); }));

  row("change-of-form", time_of([&] { pollatsek::change_of_form_sweep_serial(s, table); }),
      time_of([&] { pollatsek::change_of_form_sweep(s, table); }));

  auto places = big_ledger();
  row("gamma-enumeration",
      time_of([&] {
        disparity::brute_force_gamma_serial(places, disparity::Statistic::selmer2,
                                            disparity::Parity::even);
      }),
      time_of([&] {
        disparity::brute_force_gamma(places, disparity::Statistic::selmer2,
                                     disparity::Parity::even);
      }));

  auto f = galois::parse_polynomial("x^6+x^4+x+3");
  galois::FrobeniusSampler sampler(f);
  row("frobenius-sweep", time_of([&] { sampler.sweep_serial(3, 20000); }),
      time_of([&] { sampler.sweep(3, 20000); }));

  return 0;
}
