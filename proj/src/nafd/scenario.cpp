#include "nafd/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nafd/rng.hpp"

namespace nafd {

namespace {

constexpr int kMaxPlacementAttempts = 100000;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid SystemConfig: ") + what);
}

Point2 uniform_in_disc(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double phi = 2.0 * std::numbers::pi * u(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace

double SystemConfig::prelog() const {
  return static_cast<double>(t_frame - tau1 - tau2) / static_cast<double>(t_frame);
}

void SystemConfig::validate() const {
  require(n_ul >= 1 && n_dl >= 1, "n_ul and n_dl must be >= 1");
  require(k_ul >= 1 && k_dl >= 1, "k_ul and k_dl must be >= 1");
  require(m >= 1, "m must be >= 1");
  require(tau1 >= k_ul + k_dl, "tau1 must be >= k_ul + k_dl");
  require(tau2 >= k_dl, "tau2 must be >= k_dl");
  require(tau1 + tau2 < t_frame, "tau1 + tau2 must be < t_frame");
  require(radius > 0.0, "radius must be positive");
  require(min_access_dist >= 0.0 && min_access_dist < radius,
          "min_access_dist must lie in [0, radius)");
  require(rau_min_dist > 0.0, "rau_min_dist must be positive");
  require(pathloss_ref_m > 0.0, "pathloss_ref_m must be positive");
  require(alpha_ul > 0.0 && alpha_dl > 0.0 && alpha_i > 0.0, "path-loss exponents must be positive");
  require(p_ul >= 0.0 && p_dl >= 0.0 && p_up >= 0.0 && p_dp >= 0.0,
          "powers must be non-negative");
  require(sigma2_ul > 0.0 && sigma2_dl > 0.0 && sigma2_up > 0.0 && sigma2_dp > 0.0,
          "noise variances must be positive");
  require(bandwidth_w >= 0.0, "bandwidth_w must be non-negative");
}

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string Geometry::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "kind,index,x_m,y_m\n";
  auto emit = [&os](const char* kind, const std::vector<Point2>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      os << kind << ',' << i << ',' << pts[i].x << ',' << pts[i].y << '\n';
  };
  emit("ul_rau", ul_raus);
  emit("dl_rau", dl_raus);
  emit("ul_user", ul_users);
  emit("dl_user", dl_users);
  return os.str();
}

Geometry sample_geometry(const SystemConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng = make_rng(seed, 0, Stream::kGeometry);

  std::vector<Point2> raus;
  raus.reserve(cfg.n_total());
  for (int i = 0; i < cfg.n_total(); ++i) raus.push_back(uniform_in_disc(rng, cfg.radius));

  auto place_user = [&]() {
    for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
      const Point2 p = uniform_in_disc(rng, cfg.radius);
      bool ok = true;
      for (const auto& r : raus) {
        if (distance(p, r) < cfg.min_access_dist) {
          ok = false;
          break;
        }
      }
      if (ok) return p;
    }
    throw std::runtime_error("sample_geometry: user placement exceeded the attempt limit "
                             "(min_access_dist too large for the disc)");
  };

  Geometry g;
  g.ul_raus.assign(raus.begin(), raus.begin() + cfg.n_ul);
  g.dl_raus.assign(raus.begin() + cfg.n_ul, raus.end());
  for (int k = 0; k < cfg.k_ul; ++k) g.ul_users.push_back(place_user());
  for (int k = 0; k < cfg.k_dl; ++k) g.dl_users.push_back(place_user());
  return g;
}

double path_gain(double distance_m, double exponent, double ref_m) {
  return std::pow(distance_m / ref_m, -exponent);
}

ChannelStats large_scale_fading(const Geometry& geom, const SystemConfig& cfg) {
  const double ref = cfg.pathloss_ref_m;
  auto table = [&](const std::vector<Point2>& rows, const std::vector<Point2>& cols, double alpha,
                   double floor) {
    std::vector<std::vector<double>> out(rows.size(), std::vector<double>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        out[i][j] = path_gain(std::max(distance(rows[i], cols[j]), floor), alpha, ref);
    return out;
  };

  ChannelStats s;
  // User-RAU distances are already >= min_access_dist; the floor only guards
  // hand-built geometries that put a user on top of an antenna.
  const double user_floor = std::max(cfg.min_access_dist, 1e-9);
  s.lambda_ul = table(geom.ul_raus, geom.ul_users, cfg.alpha_ul, user_floor);
  s.lambda_dl = table(geom.dl_raus, geom.dl_users, cfg.alpha_dl, user_floor);
  s.lambda_i_user = table(geom.dl_users, geom.ul_users, cfg.alpha_i, 1e-9);
  s.lambda_i_rau = table(geom.ul_raus, geom.dl_raus, cfg.alpha_i, cfg.rau_min_dist);
  return s;
}

}  // namespace nafd
