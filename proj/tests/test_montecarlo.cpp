#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nafd/montecarlo.hpp"

using namespace nafd;
using Catch::Approx;

namespace {

struct Fixture {
  SystemConfig cfg;
  ChannelStats stats;
  explicit Fixture(std::uint64_t seed = 20)
      : stats(large_scale_fading(sample_geometry(cfg, seed), cfg)) {}
};

McConfig mc(int trials, std::uint64_t seed = 20, int threads = 1) {
  McConfig c;
  c.trials = trials;
  c.seed = seed;
  c.threads = threads;
  return c;
}

bool same(const McResult& a, const McResult& b) {
  return a.mean == b.mean && a.half_width == b.half_width && a.trials_used == b.trials_used;
}

}  // namespace

TEST_CASE("summary statistics") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const McResult r = summarize(x, 0.95);
  CHECK(r.mean == Approx(2.5));
  CHECK(r.trials_used == 4);
  // sample sd = sqrt(5/3); z(0.975) = 1.959964
  CHECK(r.half_width == Approx(1.959964 * std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-6));
  const McResult flat = summarize(std::vector<double>(10, 3.0), 0.95);
  CHECK(flat.half_width == 0.0);
  CHECK(flat.half_width >= 0.0);
}

TEST_CASE("closed form comparison") {
  const McResult m{1.0, 0.01, 100};
  const Comparison same_point = compare_closed_form(1.0, m, 0.1);
  CHECK(same_point.rel_err == 0.0);
  CHECK(same_point.pass);
  const Comparison five = compare_closed_form(1.05, m, 0.1);
  CHECK(five.rel_err == Approx(0.05));
  CHECK(five.pass);
  CHECK_FALSE(compare_closed_form(1.05, m, 0.0).pass);
}

TEST_CASE("zero power gives zero rate with zero spread") {
  Fixture f;
  f.cfg.p_dl = 0.0;
  f.cfg.p_ul = 0.0;
  const BitAllocation bits = BitAllocation::uniform(f.cfg, 5);
  const auto dl = simulate_dl_rate(f.cfg, f.stats, Scheme::kMR, bits, CsiMode::kEstimated, mc(50));
  for (const McResult& r : dl) {
    CHECK(r.mean == 0.0);
    CHECK(r.half_width == 0.0);
  }
  const auto ul = simulate_ul_rate(f.cfg, f.stats, Scheme::kZF, bits, IcMode::kWith, mc(50));
  for (const McResult& r : ul) CHECK(r.mean == 0.0);
}

TEST_CASE("identical configuration gives identical results for any worker count") {
  const Fixture f;
  const BitAllocation bits = BitAllocation::uniform(f.cfg, 4);
  const McRates a =
      simulate_rates(f.cfg, f.stats, Scheme::kZF, bits, CsiMode::kEstimated, IcMode::kWith, mc(120, 3, 1));
  const McRates b =
      simulate_rates(f.cfg, f.stats, Scheme::kZF, bits, CsiMode::kEstimated, IcMode::kWith, mc(120, 3, 1));
  const McRates c =
      simulate_rates(f.cfg, f.stats, Scheme::kZF, bits, CsiMode::kEstimated, IcMode::kWith, mc(120, 3, 4));
  for (std::size_t k = 0; k < a.dl.size(); ++k) {
    CHECK(same(a.dl[k], b.dl[k]));
    CHECK(same(a.dl[k], c.dl[k]));
  }
  for (std::size_t k = 0; k < a.ul.size(); ++k) {
    CHECK(same(a.ul[k], b.ul[k]));
    CHECK(same(a.ul[k], c.ul[k]));
  }
  CHECK(same(a.dl_avg, c.dl_avg));
  CHECK(same(a.ul_avg, c.ul_avg));
  const McRates other =
      simulate_rates(f.cfg, f.stats, Scheme::kZF, bits, CsiMode::kEstimated, IcMode::kWith, mc(120, 4, 1));
  CHECK(other.dl_avg.mean != a.dl_avg.mean);
}

TEST_CASE("confidence half-width shrinks with the square root of the trial count") {
  const Fixture f;
  const BitAllocation bits = BitAllocation::uniform(f.cfg, 5);
  const McRates small =
      simulate_rates(f.cfg, f.stats, Scheme::kMR, bits, CsiMode::kEstimated, IcMode::kWith, mc(500));
  const McRates large =
      simulate_rates(f.cfg, f.stats, Scheme::kMR, bits, CsiMode::kEstimated, IcMode::kWith, mc(2000));
  for (std::size_t k = 0; k < small.dl.size(); ++k) {
    const double ratio = small.dl[k].half_width / large.dl[k].half_width;
    CHECK(ratio == Approx(2.0).epsilon(0.3));
  }
  for (std::size_t k = 0; k < small.ul.size(); ++k) {
    const double ratio = small.ul[k].half_width / large.ul[k].half_width;
    CHECK(ratio == Approx(2.0).epsilon(0.3));
  }
}

TEST_CASE("cancellation helps the simulated uplink") {
  for (std::uint64_t seed : {14u, 16u, 20u}) {
    const Fixture f(seed);
    const BitAllocation bits = BitAllocation::uniform(f.cfg, 5);
    for (Scheme s : {Scheme::kMR, Scheme::kZF}) {
      const auto on = simulate_ul_rate(f.cfg, f.stats, s, bits, IcMode::kWith, mc(200, seed));
      const auto off = simulate_ul_rate(f.cfg, f.stats, s, bits, IcMode::kWithout, mc(200, seed));
      for (std::size_t k = 0; k < on.size(); ++k) CHECK(on[k].mean >= off[k].mean);
    }
  }
}

TEST_CASE("simulated means grow with resolution") {
  const Fixture f;
  for (Scheme s : {Scheme::kMR, Scheme::kZF}) {
    double prev_dl = 0.0, prev_ul = 0.0;
    for (int b = 1; b <= 10; ++b) {
      const McRates r = simulate_rates(f.cfg, f.stats, s, BitAllocation::uniform(f.cfg, b),
                                       CsiMode::kEstimated, IcMode::kWith, mc(200));
      INFO("scheme " << to_string(s) << " b=" << b);
      CHECK(r.dl_avg.mean >= prev_dl);
      CHECK(r.ul_avg.mean >= prev_ul);
      prev_dl = r.dl_avg.mean;
      prev_ul = r.ul_avg.mean;
    }
  }
}

TEST_CASE("fine quantization with clean training approaches perfect training") {
  Fixture f;
  f.cfg.sigma2_dp = 1e-9;
  const BitAllocation fine = BitAllocation::uniform(f.cfg, 12);
  const auto trained =
      simulate_dl_rate(f.cfg, f.stats, Scheme::kMR, fine, CsiMode::kEstimated, mc(300));
  const auto coarse = simulate_dl_rate(f.cfg, f.stats, Scheme::kMR, BitAllocation::uniform(f.cfg, 2),
                                       CsiMode::kEstimated, mc(300));
  for (std::size_t k = 0; k < trained.size(); ++k) CHECK(trained[k].mean > coarse[k].mean);
}

TEST_CASE("closed form tracks the simulation for MR downlink at six bits", "[!mayfail]") {
  const Fixture f;
  const BitAllocation bits = BitAllocation::uniform(f.cfg, 6);
  const RateReport cf = closed_form_rates(f.stats, f.cfg, Scheme::kMR, bits, CsiMode::kEstimated,
                                          IcMode::kWith);
  const McRates sim = simulate_rates(f.cfg, f.stats, Scheme::kMR, bits, CsiMode::kEstimated,
                                     IcMode::kWith, mc(2000));
  double avg = 0.0;
  for (double r : cf.r_dl) avg += r / cf.r_dl.size();
  const Comparison c = compare_closed_form(avg, sim.dl_avg, 0.10);
  INFO("closed " << avg << " simulated " << sim.dl_avg.mean << " rel_err " << c.rel_err);
  CHECK(c.pass);
}

TEST_CASE("closed form tracks the simulation for ZF statistical downlink at eight bits",
          "[!mayfail]") {
  const Fixture f;
  const BitAllocation bits = BitAllocation::uniform(f.cfg, 8);
  const RateReport cf = closed_form_rates(f.stats, f.cfg, Scheme::kZF, bits,
                                          CsiMode::kStatistical, IcMode::kWith);
  const McRates sim = simulate_rates(f.cfg, f.stats, Scheme::kZF, bits, CsiMode::kStatistical,
                                     IcMode::kWith, mc(2000));
  double avg = 0.0;
  for (double r : cf.r_dl) avg += r / cf.r_dl.size();
  const Comparison c = compare_closed_form(avg, sim.dl_avg, 0.10);
  INFO("closed " << avg << " simulated " << sim.dl_avg.mean << " rel_err " << c.rel_err);
  CHECK(c.pass);
}

TEST_CASE("closed form tracks the simulation for MR uplink with cancellation", "[!mayfail]") {
  const Fixture f;
  for (int b = 1; b <= 10; ++b) {
    const BitAllocation bits = BitAllocation::uniform(f.cfg, b);
    const RateReport cf =
        closed_form_rates(f.stats, f.cfg, Scheme::kMR, bits, CsiMode::kEstimated, IcMode::kWith);
    const auto sim = simulate_ul_rate(f.cfg, f.stats, Scheme::kMR, bits, IcMode::kWith, mc(500));
    for (std::size_t k = 0; k < sim.size(); ++k) {
      const Comparison c = compare_closed_form(cf.r_ul[k], sim[k], 0.10);
      INFO("b=" << b << " user " << k << " rel_err " << c.rel_err);
      CHECK(c.pass);
    }
  }
}
