// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "detour/cli.hpp"
#include "detour/curve.hpp"
#include "detour/error.hpp"
#include "detour/io.hpp"
#include "detour/repair.hpp"
#include "detour/verify.hpp"
#include "test_seed.hpp"

namespace {

using namespace detour;

const Space kPlane = Space::euclidean(2);

struct Outcome {
  bool ok = true;
  std::string detail;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& why) {
    ok = false;
    if (failures++ == 0) first_failure = why;
  }
};

int report(int id, const std::string& title, const Outcome& o) {
  std::printf("%s criterion %d: %s (%s", o.ok ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str());
  if (!o.ok) std::printf("; %d failures, first: %s", o.failures, o.first_failure.c_str());
  std::printf(")\n");
  return o.ok ? 0 : 1;
}

Point random_in_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0, 1);
  const double r = radius * std::sqrt(u(rng));
  const double a = 2 * std::numbers::pi * u(rng);
  return {r * std::cos(a), r * std::sin(a)};
}

// Independent clearance oracle: dense samples of the output curve.
double sampled_clearance(const Curve& c, const Space& s, const std::vector<Point>& ms,
                         int samples) {
  double best = kInfinity;
  for (int i = 0; i <= samples; ++i) {
    const Point p = c.evaluate(c.t_lo() + (c.t_hi() - c.t_lo()) * i / samples);
    for (const Point& m : ms) best = std::min(best, distance(s, p, m));
  }
  return best;
}

bool chain_ordered(const PunctureResult& r, const Curve& path) {
  const auto& recs = r.schedule.records;
  if (recs.size() != r.records.size()) return false;
  double prev = path.t_lo();
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const double next = k + 1 < recs.size() ? recs[k + 1].t_first : path.t_hi();
    const SpliceRecord& s = r.records[k];
    if (!(prev < s.t_entry && s.t_entry < recs[k].t_first && recs[k].t_first <= recs[k].t_last &&
          recs[k].t_last < s.t_exit && s.t_exit < next)) {
      return false;
    }
    prev = s.t_exit;
  }
  return true;
}

bool balls_disjoint(const DetourRadii& radii, const Space& s) {
  for (std::size_t i = 0; i < radii.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < radii.entries.size(); ++j) {
      const auto& a = radii.entries[i];
      const auto& b = radii.entries[j];
      if (!(distance(s, a.obstacle, b.obstacle) > a.delta + b.delta)) return false;
    }
  }
  return true;
}

bool modulus_halves(const Curve& c, const RepairProblem& p, std::string& why) {
  int n = 4096;
  double prev = validate(c, p, n).continuity_modulus;
  for (int k = 0; k < 3; ++k) {
    n *= 2;
    const double next = validate(c, p, n).continuity_modulus;
    if (!(next <= 0.75 * prev)) {
      std::ostringstream os;
      os << "modulus " << next << " at " << n << " vs " << prev;
      why = os.str();
      return false;
    }
    prev = next;
  }
  return true;
}

struct Accepted {
  RepairProblem problem;
  PunctureResult result;
};

// 1. Randomized finite-obstacle problems in the radius-10 disc.
std::vector<Accepted> random_suite(std::mt19937_64& rng, Outcome& o) {
  std::vector<Accepted> accepted;
  std::uniform_int_distribution<int> n_obstacles(1, 8), n_waypoints(2, 6);
  std::uniform_real_distribution<double> u(0, 1);
  const Domain domain = Domain::ball(kPlane, {0, 0}, 10);
  double elapsed = 0;
  int generated = 0;
  while (generated < 500) {
    std::vector<Point> waypoints;
    const int nw = n_waypoints(rng);
    for (int i = 0; i < nw; ++i) waypoints.push_back(random_in_disc(rng, 9));
    const Curve path = Curve::polyline(kPlane, waypoints);
    const int nm = n_obstacles(rng);
    std::vector<Point> obstacles;
    int forced = 0;
    for (int i = 0; i < nm; ++i) {
      if (u(rng) < 0.6) {
        obstacles.push_back(path.evaluate(0.02 + 0.96 * u(rng)));
        ++forced;
      } else {
        obstacles.push_back(random_in_disc(rng, 9.5));
      }
    }
    if (forced == 0) obstacles.front() = path.evaluate(0.02 + 0.96 * u(rng));
    RepairProblem p{kPlane, domain, path, ObstacleSet::finite(obstacles), Options{}};
    if (!check_hypotheses(p).empty()) continue;
    ++generated;

    const auto start = std::chrono::steady_clock::now();
    PunctureResult r = [&] {
      try {
        return std::optional<PunctureResult>(puncture(p));
      } catch (const Error& e) {
        o.fail(std::string("puncture threw ") + e.what());
        return std::optional<PunctureResult>();
      }
    }().value_or(PunctureResult{path, {}, {}, {}, {}});
    elapsed += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool good = true;
    const auto check = [&](bool cond, const std::string& why) {
      if (!cond) {
        o.fail("problem " + std::to_string(generated) + ": " + why);
        good = false;
      }
    };
    check(r.curve.evaluate(r.curve.t_lo()) == waypoints.front() &&
              r.curve.evaluate(r.curve.t_hi()) == waypoints.back(),
          "endpoints not exact");
    check(r.report.min_clearance > 0.0, "min_clearance not positive");
    check(sampled_clearance(r.curve, kPlane, obstacles, 20000) > 0.0, "sampled clearance zero");
    bool inside = r.report.containment_ok;
    for (int i = 0; i <= 20000 && inside; ++i) {
      inside = contains(domain, r.curve.evaluate(r.curve.t_lo() +
                                                 (r.curve.t_hi() - r.curve.t_lo()) * i / 20000));
    }
    check(inside, "sample outside U");
    check(chain_ordered(r, path), "splice chain not strictly ordered");
    check(balls_disjoint(r.radii, kPlane), "working balls intersect");
    check(r.report.passed(), "report failed");
    if (good) accepted.push_back({p, std::move(r)});
  }
  std::ostringstream os;
  os << generated << " problems, puncture time " << elapsed << " s";
  if (elapsed >= 30.0) o.fail("runtime over 30 s");
  o.detail = os.str();
  return accepted;
}

// 2. Every δ in (0, δ0] meets the segment from x0 to z.
Outcome prop31(std::mt19937_64& rng) {
  Outcome o;
  std::uniform_real_distribution<double> u(0, 1);
  int checks = 0;
  for (int i = 0; i < 200; ++i) {
    const Space space = i % 2 ? Space::chebyshev() : Space::euclidean(2);
    const int shape = i % 3;
    const Domain domain = shape == 0   ? Domain::ball(space, {0, 0}, 10)
                          : shape == 1 ? Domain::box(space, {-6, -4}, {6, 4})
                                       : Domain::all(space);
    const auto pick = [&] {
      while (true) {
        const Point p{-6 + 12 * u(rng), -4 + 8 * u(rng)};
        if (shape == 2 || (contains(domain, p) && interior_radius(domain, p) > 1e-3)) return p;
      }
    };
    const Point x0 = pick();
    Point z = pick();
    while (z == x0) z = pick();
    const double d0 = prop_delta0(space, domain, x0, z);
    const Point pts[] = {x0, z};
    const Curve seg = Curve::polyline(space, pts);
    for (int k = 0; k < 10; ++k) {
      const double delta = d0 * (1.0 - u(rng));  // (0, δ0]
      ++checks;
      if (sphere_crossings(seg, space, x0, delta, {0, 1}).empty()) {
        o.fail("instance " + std::to_string(i) + " no crossing");
      }
    }
  }
  o.detail = std::to_string(checks) + " radius checks";
  return o;
}

// 3. Paths with distinct in/out branches through x0 cross every small sphere twice.
Outcome corollary(std::mt19937_64& rng) {
  Outcome o;
  std::uniform_real_distribution<double> u(0, 1);
  const Domain domain = Domain::ball(kPlane, {0, 0}, 10);
  int checks = 0;
  for (int i = 0; i < 100; ++i) {
    const Point x0 = random_in_disc(rng, 5);
    Point a = random_in_disc(rng, 9), b = random_in_disc(rng, 9);
    // Distinct branches: the two legs leave x0 at an angle of at least 10 degrees.
    const auto angle = [&](const Point& p, const Point& q) {
      const Point v = p - x0, w = q - x0;
      return std::acos(std::clamp(dot(v, w) / (euclidean_norm(v) * euclidean_norm(w)), -1.0, 1.0));
    };
    while (distance(kPlane, a, x0) < 0.5 || distance(kPlane, b, x0) < 0.5 ||
           angle(a, b) < std::numbers::pi / 18) {
      a = random_in_disc(rng, 9);
      b = random_in_disc(rng, 9);
    }
    // x0 sits at t = 0.5 so the odd-sized grid below samples it exactly.
    const Curve path({Piece{LinearPiece{a, x0}, 0.0, 0.5}, Piece{LinearPiece{x0, b}, 0.5, 1.0}});
    const double d0 = std::min(prop_delta0(kPlane, domain, x0, a), prop_delta0(kPlane, domain, x0, b));
    for (int k = 0; k < 10; ++k) {
      const double delta = d0 * (1.0 - u(rng));
      ++checks;
      const int count = brute_force_crossings(path, kPlane, x0, delta, 100001);
      if (count < 2) {
        o.fail("path " + std::to_string(i) + " count " + std::to_string(count));
      }
    }
  }
  o.detail = std::to_string(checks) + " radius checks";
  return o;
}

// 4. Closed-form roots against a dense sign-change scan with bisection, written
// directly on the segment formula.
Outcome oracle_equivalence(std::mt19937_64& rng) {
  Outcome o;
  std::uniform_real_distribution<double> u(-4, 4);
  constexpr int kSamples = 1'000'000;
  int roots = 0;
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = i % 4 == 3 ? 3 : 2;
    const Space space = Space::euclidean(dim);
    std::vector<double> av(dim), bv(dim), cv(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      av[k] = u(rng);
      bv[k] = u(rng);
      cv[k] = u(rng) * 0.5;
    }
    const Point a(av), b(bv), c(cv);
    const double r = 0.2 + std::abs(u(rng));
    const Point pts[] = {a, b};
    const Curve seg = Curve::polyline(space, pts);
    const auto got = sphere_crossings(seg, space, c, r, {0, 1}).parameters();

    const auto f = [&](double t) {
      double s = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double x = av[k] + t * (bv[k] - av[k]) - cv[k];
        s += x * x;
      }
      return std::sqrt(s) - r;
    };
    std::vector<double> ref;
    double t_prev = 0, f_prev = f(0);
    for (int j = 1; j <= kSamples; ++j) {
      const double t = static_cast<double>(j) / kSamples;
      const double ft = f(t);
      if ((f_prev < 0) != (ft < 0)) {
        double lo = t_prev, hi = t, flo = f_prev;
        for (int it = 0; it < 80; ++it) {
          const double m = 0.5 * (lo + hi);
          const double fm = f(m);
          if ((fm < 0) == (flo < 0)) {
            lo = m;
            flo = fm;
          } else {
            hi = m;
          }
        }
        ref.push_back(0.5 * (lo + hi));
      }
      t_prev = t;
      f_prev = ft;
    }
    if (got.size() != ref.size()) {
      o.fail("instance " + std::to_string(i) + " root count " + std::to_string(got.size()) +
             " vs " + std::to_string(ref.size()));
      continue;
    }
    for (std::size_t k = 0; k < got.size(); ++k) {
      ++roots;
      worst = std::max(worst, std::abs(got[k] - ref[k]));
      if (std::abs(got[k] - ref[k]) > 1e-9) o.fail("instance " + std::to_string(i) + " mismatch");
    }
  }
  std::ostringstream os;
  os << "200 instances, " << roots << " roots, max deviation " << worst;
  o.detail = os.str();
  return o;
}

// 5. Line spaces and obstacles on the domain boundary are rejected.
Outcome negatives(std::mt19937_64& rng) {
  Outcome o;
  std::uniform_real_distribution<double> u(0, 1);
  const auto dir = std::filesystem::temp_directory_path() /
                   ("detour_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  int rejected = 0;
  for (int i = 0; i < 50; ++i) {
    RepairProblem p = [&]() -> RepairProblem {
      if (i < 25) {
        const Space line = Space::line();
        const double x = -8 + 4 * u(rng), y = 4 + 4 * u(rng);
        const double m = x + (y - x) * (0.1 + 0.8 * u(rng));
        const Point pts[] = {{x}, {y}};
        return {line, Domain::ball(line, {0}, 10), Curve::polyline(line, pts),
                ObstacleSet::finite({{m}}), Options{}};
      }
      // Boundary points must be exactly representable, else rounding can
      // move them into the interior.
      static const Point kCircle[] = {{5, 0}, {0, 5}, {-5, 0}, {0, -5}, {3, 4},
                                      {-4, 3}, {-3, -4}, {4, -3}, {-4, -3}};
      const bool box = i % 2;
      const Domain domain = box ? Domain::box(kPlane, {-5, -5}, {5, 5})
                                : Domain::ball(kPlane, {0, 0}, 5, i % 4 == 0);
      const Point edge =
          box ? (i % 4 == 1 ? Point{5, -5 + 10 * u(rng)} : Point{-5 + 10 * u(rng), -5})
              : kCircle[static_cast<std::size_t>(u(rng) * 9) % 9];
      const Point pts[] = {{-1, -1 + u(rng)}, {1, u(rng)}};
      return {kPlane, domain, Curve::polyline(kPlane, pts), ObstacleSet::finite({edge}),
              Options{}};
    }();
    const ErrorCode expected = i < 25 ? ErrorCode::kHypothesisViolated : ErrorCode::kNotInterior;
    bool lib_ok = false;
    try {
      puncture(p);
    } catch (const Error& e) {
      lib_ok = e.code() == expected;
    }
    const auto in = dir / "problem.json";
    std::vector<Point> waypoints = {p.path.front(), p.path.back()};
    io::write_json(in, io::problem_to_json(io::ProblemFile{p, waypoints}));
    std::ostringstream err;
    const int code = cli::cmd_repair(in, dir / "result.json", {}, err);
    if (lib_ok && code == cli::kExitHypothesis) {
      ++rejected;
    } else {
      o.fail("case " + std::to_string(i) + " exit " + std::to_string(code));
    }
  }
  std::filesystem::remove_all(dir);
  o.detail = std::to_string(rejected) + "/50 rejected";
  return o;
}

// 6. Lattice obstacles: straight paths crossing 3..7 lattice points.
Outcome lattice_suite(std::mt19937_64& rng) {
  Outcome o;
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> n_hits(3, 7), lattice_index(-3, 3);
  const int dirs[][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {-1, 3}};
  for (int i = 0; i < 100; ++i) {
    const double step = 0.5 + 1.5 * u(rng);
    const Point origin{u(rng), u(rng)};
    const int k = n_hits(rng);
    const int* v = dirs[i % 7];
    const Point start = origin + step * Point{static_cast<double>(lattice_index(rng)),
                                              static_cast<double>(lattice_index(rng))};
    const Point dv = step * Point{static_cast<double>(v[0]), static_cast<double>(v[1])};
    const Point pts[] = {start - 0.5 * dv, start + (k - 0.5) * dv};
    RepairProblem p{kPlane, Domain::all(kPlane), Curve::polyline(kPlane, pts),
                    ObstacleSet::lattice(kPlane, step, origin), Options{}};
    for (PunctureMode mode : {PunctureMode::kScheduled, PunctureMode::kIterative}) {
      p.options.mode = mode;
      const std::string tag = "instance " + std::to_string(i) + " " + io::to_string(mode);
      try {
        const PunctureResult r = puncture(p);
        if (mode == PunctureMode::kScheduled && r.schedule.k_star() != static_cast<std::size_t>(k)) {
          o.fail(tag + " schedule length " + std::to_string(r.schedule.k_star()));
        }
        if (!r.report.passed() || !(r.report.min_clearance > 0)) o.fail(tag + " report failed");
      } catch (const Error& e) {
        o.fail(tag + " threw " + e.what());
      }
    }
  }
  o.detail = "100 instances x 2 modes";
  return o;
}

}  // namespace

int main() {
  const std::uint64_t seed = detour::testing::seed();
  std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
  std::mt19937_64 rng(seed);
  int failed = 0;

  Outcome c1;
  const std::vector<Accepted> accepted = random_suite(rng, c1);
  failed += report(1, "randomized finite-obstacle suite", c1);
  failed += report(2, "sphere crossing guarantee", prop31(rng));
  failed += report(3, "in/out branches cross twice", corollary(rng));
  failed += report(4, "closed-form vs sampled crossings", oracle_equivalence(rng));
  failed += report(5, "hypothesis violations rejected", negatives(rng));
  failed += report(6, "lattice obstacles, both modes", lattice_suite(rng));

  Outcome c7;
  for (const Accepted& a : accepted) {
    RepairProblem again = a.problem;
    again.path = a.result.curve;
    try {
      const PunctureResult twice = puncture(again);
      if (!(twice.curve == a.result.curve) || !twice.records.empty()) c7.fail("output changed");
    } catch (const Error& e) {
      c7.fail(std::string("threw ") + e.what());
    }
  }
  c7.detail = std::to_string(accepted.size()) + " outputs";
  failed += report(7, "repair is idempotent", c7);

  Outcome c8;
  for (const Accepted& a : accepted) {
    std::string why;
    if (!modulus_halves(a.result.curve, a.problem, why)) c8.fail(why);
  }
  c8.detail = std::to_string(accepted.size()) + " outputs, three doublings from 4096";
  failed += report(8, "continuity modulus shrinks", c8);

  std::printf("%s: %d of 8 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
