#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "berkcrucial/io.hpp"

using namespace berk;
using json = nlohmann::ordered_json;

namespace {

struct Options {
  long p = 2;
  int e = 1;
  std::string map;
  std::string at;
  int n = 3;
  unsigned seed = 1;
  long cap = 64;
  std::string format = "json";
  std::string out;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text << std::endl;
  } else {
    std::ofstream f(opt.out);
    f << text << std::endl;
  }
}

RationalMapRep load_map(const Options& opt) {
  if (opt.map.empty()) throw InputError("--map is required");
  return parse_map(opt.map, opt.p, opt.e);
}

BerkPoint load_point(const Options& opt, const TowerContext& ctx) {
  if (opt.at.empty()) throw InputError("--at is required");
  return parse_point(opt.at, ctx);
}

int run_selftest(const Options& opt) {
  std::mt19937 rng(opt.seed);
  std::cout << "selftest seed=" << opt.seed << "\n";
  auto rand_coeff = [&](const TowerContext& ctx) {
    static const long nums[] = {0, 1, -1, 2, -2, 3, 1, -1};
    long n = nums[rng() % 8];
    int pw = static_cast<int>(rng() % 3) - 1;
    QQ q(n);
    if (pw == 1) q *= ctx.p;
    if (pw == -1) q /= ctx.p;
    return q;
  };
  const long primes[] = {2, 3, 5};
  auto rand_map = [&](long p, int d) -> RationalMapRep {
    TowerContext ctx{p, 1};
    for (int tries = 0; tries < 100; ++tries) {
      std::vector<QQ> nc(d + 1), dc(d + 1);
      for (auto& c : nc) c = rand_coeff(ctx);
      for (auto& c : dc) c = rand_coeff(ctx);
      try {
        RationalMapRep f = RationalMapRep::from_polys(
            Poly::from_rationals(ctx, nc), Poly::from_rationals(ctx, dc));
        if (f.degree() == d) return f;
      } catch (const InputError&) {
      }
    }
    throw InputError("selftest: sampling failed");
  };
  auto rand_point = [&](long p) {
    TowerContext ctx{p, 1};
    long a = static_cast<long>(rng() % (p + 1));
    long tnum = static_cast<long>(rng() % 5) - 2;
    return BerkPoint::type2(TowerElem(ctx, QQ(a)), QQ(tnum));
  };
  int failures = 0;
  auto check = [&](bool ok, const std::string& name, const std::string& info) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << " (" << info << ")\n";
    if (!ok) ++failures;
  };
  // ordres oracle: direct == formula
  {
    int done = 0, bad = 0;
    while (done < 20) {
      long p = primes[rng() % 3];
      RationalMapRep f = rand_map(p, 2 + static_cast<int>(rng() % 2));
      BerkPoint S = rand_point(p);
      if (ordres_direct(f, S) != ordres_via_formula(f, S)) ++bad;
      ++done;
    }
    check(bad == 0, "ordres two routes agree", std::to_string(done) + " maps");
  }
  // crucial slope range and convexity
  {
    int done = 0, bad = 0;
    while (done < 10) {
      long p = primes[rng() % 3];
      int d = 2 + static_cast<int>(rng() % 2);
      RationalMapRep f = rand_map(p, d);
      BerkPoint S = rand_point(p);
      std::vector<QQ> slopes;
      for (long r = -1; r < p; ++r) {
        P1Fp v = r < 0 ? P1Fp::infinity() : P1Fp::finite(r, p);
        QQ s = crucial_slope(f, S, v);
        QQ m = (QQ(d + 1) - s * QQ(2 * (d - 1))) / 2;
        if (m.get_den() != 1 || m < 0 || m > d + 1) ++bad;
        slopes.push_back(s);
      }
      for (size_t i = 0; i < slopes.size(); ++i)
        for (size_t j = i + 1; j < slopes.size(); ++j)
          if (slopes[i] + slopes[j] < 0) ++bad;
      ++done;
    }
    check(bad == 0, "slope range and convexity", std::to_string(done) + " points");
  }
  // surplus totals
  {
    int done = 0, bad = 0, attempts = 0;
    while (done < 10 && attempts < 200) {
      ++attempts;
      long p = primes[rng() % 3];
      int d = 2 + static_cast<int>(rng() % 2);
      RationalMapRep f = rand_map(p, d);
      BerkPoint S = rand_point(p);
      try {
        DegreeData dd(f, S);
        int total = 0;
        for (long r = -1; r < p; ++r) {
          P1Fp v = r < 0 ? P1Fp::infinity() : P1Fp::finite(r, p);
          total += dd.surplus_degree(v);
        }
        if (total != d - dd.local_degree()) ++bad;
        ++done;
      } catch (const UnsupportedResidueExtension&) {
      }
    }
    check(done >= 10 && bad == 0, "surplus degree totals",
          std::to_string(done) + " points");
  }
  // crucial measure structure
  {
    int done = 0, bad = 0, attempts = 0;
    while (done < 5 && attempts < 100) {
      ++attempts;
      int d = 2 + static_cast<int>(rng() % 2);
      RationalMapRep f = rand_map(5, d);
      try {
        CrucialMeasure cm = crucial_measure(f);
        long sum = 0;
        for (const auto& [pt, w] : cm.weights) sum += w;
        if (sum != d - 1 || cm.nu.total() != 1) ++bad;
        ++done;
      } catch (const UnsupportedResidueExtension&) {
      }
    }
    check(done >= 5 && bad == 0, "weight totals", std::to_string(done) + " maps");
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations for rational maps on the Berkovich line"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("BERKCRUCIAL_PRECISION_MAX"))
    opt.cap = std::atol(env) > 0 ? std::atol(env) : opt.cap;

  auto add_common = [&](CLI::App* sub, bool need_map) {
    sub->add_option("--p", opt.p, "prime")->required();
    sub->add_option("--e", opt.e, "initial ramification index");
    if (need_map) sub->add_option("--map", opt.map, "rational map in z")->required();
    sub->add_option("--cap", opt.cap, "degree cap for iteration");
    sub->add_option("--format", opt.format, "json|dot|csv");
    sub->add_option("--out", opt.out, "output file (default stdout)");
  };

  CLI::App* c_ordres = app.add_subcommand("ordres", "ordRes at a point, two ways");
  add_common(c_ordres, true);
  c_ordres->add_option("--at", opt.at, "point center;t")->required();

  CLI::App* c_crucial = app.add_subcommand("crucial", "crucial function value");
  add_common(c_crucial, true);
  c_crucial->add_option("--at", opt.at, "point center;t")->required();

  CLI::App* c_mrl = app.add_subcommand("minresloc", "minimal resultant locus");
  add_common(c_mrl, true);

  CLI::App* c_tree = app.add_subcommand("crucialtree", "crucial tree (DOT/JSON)");
  add_common(c_tree, true);

  CLI::App* c_w = app.add_subcommand("weights", "weight function table");
  add_common(c_w, true);

  CLI::App* c_good = app.add_subcommand("goodred", "potentially good reduction?");
  add_common(c_good, true);

  CLI::App* c_eq = app.add_subcommand("equidist", "quantitative equidistribution");
  add_common(c_eq, true);
  c_eq->add_option("--n", opt.n, "check n = 1..N");

  CLI::App* c_self = app.add_subcommand("selftest", "randomized invariant suite");
  c_self->add_option("--seed", opt.seed, "rng seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_self->parsed()) return run_selftest(opt);
    RationalMapRep f = load_map(opt);
    TowerContext ctx = f.context();
    if (c_ordres->parsed()) {
      BerkPoint S = load_point(opt, ctx);
      QQ dir = ordres_direct(f, S), frm = ordres_via_formula(f, S);
      json j;
      j["direct"] = rational_str(dir);
      j["formula"] = rational_str(frm);
      j["equal"] = (dir == frm);
      emit(opt, j.dump());
      return dir == frm ? 0 : 1;
    }
    if (c_crucial->parsed()) {
      BerkPoint S = load_point(opt, ctx);
      json j;
      j["crucial"] = rational_str(crucial_at(f, S));
      emit(opt, j.dump());
      return 0;
    }
    if (c_mrl->parsed()) {
      MinResLocResult m = minresloc(f);
      json j;
      json locus = json::array();
      for (const auto& pt : m.locus) locus.push_back(json::parse(point_json(pt)));
      j["locus"] = locus;
      j["min"] = rational_str(m.min_value);
      j["potentially_good"] = (m.min_value == 0);
      emit(opt, j.dump());
      return 0;
    }
    if (c_tree->parsed()) {
      CrucialMeasure cm = crucial_measure(f);
      if (opt.format == "dot")
        emit(opt, tree_dot(cm.tree, &cm.weights));
      else
        emit(opt, tree_json(cm.tree));
      return 0;
    }
    if (c_w->parsed()) {
      CrucialMeasure cm = crucial_measure(f);
      json j;
      json ws = json::array();
      long sum = 0;
      for (const auto& [pt, w] : cm.weights) {
        json jw;
        jw["point"] = json::parse(point_json(pt));
        jw["w"] = w;
        ws.push_back(jw);
        sum += w;
      }
      j["weights"] = ws;
      j["sum"] = sum;
      emit(opt, j.dump());
      return 0;
    }
    if (c_good->parsed()) {
      MinResLocResult m = minresloc(f);
      bool good = is_potentially_good(f);
      json j;
      j["potentially_good"] = good;
      j["min"] = rational_str(m.min_value);
      emit(opt, j.dump());
      return 0;
    }
    if (c_eq->parsed()) {
      BerkPoint scan = BerkPoint::gauss(ctx);
      // default test tree: span of the Gauss point and two nearby points
      FiniteTree T = FiniteTree::span(
          {scan, BerkPoint::type2(TowerElem::zero(ctx), QQ(2)),
           BerkPoint::type2(TowerElem::one(ctx), QQ(2)),
           BerkPoint::type2(TowerElem::zero(ctx), QQ(-1))});
      std::vector<TreePLF> phis;
      phis.push_back(default_test_function(T, scan, QQ(1)));
      phis.push_back(default_test_function(
          T, BerkPoint::type2(TowerElem::zero(ctx), QQ(1)), QQ(2)));
      phis.push_back(default_test_function(
          T, BerkPoint::type2(TowerElem::one(ctx), QQ(1)), QQ(1)));
      std::vector<EquidistRecord> recs;
      for (int n = 1; n <= opt.n; ++n)
        for (const auto& phi : phis)
          recs.push_back(quantitative_check(f, n, phi, scan, opt.cap));
      if (opt.format == "csv")
        emit(opt, equidist_csv(recs));
      else
        emit(opt, equidist_json(recs));
      return 0;
    }
  } catch (const UnsupportedResidueExtension& e) {
    json j;
    j["error"] = "UnsupportedResidueExtension";
    j["what"] = e.what();
    j["map"] = opt.map;
    std::cerr << j.dump() << std::endl;
    return 2;
  } catch (const InputError& e) {
    json j;
    j["error"] = "InputError";
    j["what"] = e.what();
    j["map"] = opt.map;
    j["at"] = opt.at;
    std::cerr << j.dump() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    json j;
    j["error"] = "Error";
    j["what"] = e.what();
    std::cerr << j.dump() << std::endl;
    return 1;
  }
  return 1;
}
